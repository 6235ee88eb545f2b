#include "mcbench/metrics.hpp"

#include <cmath>
#include <sstream>

namespace mcbench {

Measures compute_measures(const Instance& inst, const Solution& sol) {
  Measures m;
  m.ts = sol.total_surplus;
  if (!sol.prices.empty()) {
    double sum = 0.0;
    for (double p : sol.prices) sum += p;
    m.mcp = sum / static_cast<double>(sol.prices.size());
  }
  for (size_t b = 0; b < sol.blocks.size(); ++b) {
    const BlockOutcome& out = sol.blocks[b];
    if (out.cls == BlockClass::Normal) continue;
    const BlockBid& blk = inst.blocks[b];
    const double volume = blk.total_volume();
    const double per_unit =
        volume > 0.0 ? std::fabs(out.surplus) / volume : 0.0;
    double literal = 0.0;
    for (const auto& [t, q] : blk.quantities)
      if (q != 0.0) literal += blk.price - sol.prices[t];
    literal = std::fabs(literal);
    if (out.cls == BlockClass::Pab) {
      ++m.n_pab;
      m.tl += -out.surplus;
      m.mul = std::max(m.mul, per_unit);
      m.mul_literal = std::max(m.mul_literal, literal);
    } else {
      ++m.n_prb;
      m.tlp += out.surplus;
      m.mulp = std::max(m.mulp, per_unit);
      m.mulp_literal = std::max(m.mulp_literal, literal);
    }
  }
  m.side_payment = m.tl;
  return m;
}

std::string measures_csv_header() {
  return "instance_id,rule,ts,mcp,n_pab,n_prb,tl,tlp,mul,mulp,side_payment,"
         "status,gap,wall_time";
}

std::string measures_csv_row(const std::string& instance_id,
                             const Solution& sol, const Measures& m) {
  std::ostringstream os;
  os.precision(12);
  os << instance_id << ',' << to_string(sol.rule) << ',' << m.ts << ','
     << m.mcp << ',' << m.n_pab << ',' << m.n_prb << ',' << m.tl << ','
     << m.tlp << ',' << m.mul << ',' << m.mulp << ',' << m.side_payment << ','
     << to_string(sol.status) << ',' << sol.gap << ',' << sol.wall_time_s;
  return os.str();
}

}  // namespace mcbench
