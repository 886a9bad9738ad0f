#include "torsionlab/json_io.hpp"

#include <cmath>
#include <fstream>

namespace torsionlab {

OrderedJson complex_json(Complex c) { return OrderedJson::array({c.real(), c.imag()}); }

OrderedJson form_json(const Form& f) {
  OrderedJson out = OrderedJson::object();
  for (std::uint32_t m = 0; m < f.size(); ++m) {
    std::string key;
    for (int a = 0; a < f.context()->generators(); ++a)
      if (m & (1u << a)) {
        if (!key.empty()) key += "^";
        key += "dx" + std::to_string(a + 1);
      }
    if (key.empty()) key = "1";
    out[key] = complex_json(f.coeff(m));
  }
  return out;
}

void write_json(const OrderedJson& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << j.dump(2) << "\n";
}

} // namespace torsionlab
