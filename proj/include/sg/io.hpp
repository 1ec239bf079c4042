#ifndef SG_IO_HPP
#define SG_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "field.hpp"

namespace sg {

// FieldState goes to CSV ("x,f,ft") plus a JSON sidecar <path>.json carrying
// the time stamp and topological sector.  %.17g keeps round trips bit exact.
inline void save_csv(const FieldState& st, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "x,f,ft\n";
  char buf[128];
  for (std::size_t i = 0; i < st.xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", st.xs[i], st.f[i], st.ft[i]);
    out << buf;
  }
  nlohmann::json side{{"t", st.t}, {"l_minus", st.l_minus}, {"l_plus", st.l_plus}};
  std::ofstream js(path + ".json");
  js << side.dump(2) << "\n";
}

inline FieldState load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  FieldState st;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, f, ft;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &f, &ft) != 3)
      throw std::runtime_error("bad CSV row: " + line);
    st.xs.push_back(x);
    st.f.push_back(f);
    st.ft.push_back(ft);
  }
  std::ifstream js(path + ".json");
  if (js) {
    nlohmann::json side;
    js >> side;
    st.t = side.value("t", 0.0);
    st.l_minus = side.value("l_minus", 0);
    st.l_plus = side.value("l_plus", 0);
  } else {
    st.infer_sector();
  }
  return st;
}

}  // namespace sg

#endif
