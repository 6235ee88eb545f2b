#pragma once

#include <stdexcept>
#include <string>

#include "mcbench/types.hpp"

namespace mcbench {

// Raised on malformed instance/profile documents: bad JSON, missing or
// unknown fields, wrong types.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance document layout (field names are fixed, unknown fields rejected):
//   {
//     "periods": [0, 1, ...],
//     "p_min": <number>, "p_max": <number>,
//     "hourly": [{"period": t, "direction": "supply"|"demand",
//                 "p0": <number>, "p1": <number>, "q": <number>}, ...],
//     "blocks": [{"id": <string>, "price": <number>,
//                 "quantities": {"<period>": <number>, ...}}, ...]
//   }
Instance parse_instance(const std::string& text);
std::string render_instance(const Instance& instance);

Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& instance, const std::string& path);

}  // namespace mcbench
