#include "geolink/numeric.hpp"

namespace geolink {

std::string rat_to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

Int parse_int(const std::string& s) {
  Int n;
  if (s.empty() || n.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed integer literal: " + s);
  return n;
}

}  // namespace geolink
