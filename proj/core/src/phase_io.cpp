#include "hitchin/phase_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hitchin {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(Complex c) {
  return "[" + fmt(c.real()) + "," + fmt(c.imag()) + "]";
}

std::string fmt_vector(const CVector& v) {
  std::string out = "[";
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j) out += ",";
    out += fmt(v(j));
  }
  return out + "]";
}

std::string fmt_matrix(const CMatrix& a) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c) out += ",";
      out += fmt(a(r, c));
    }
    out += "]";
  }
  return out + "]";
}

Complex parse_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::runtime_error("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix parse_matrix(const nlohmann::json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw std::runtime_error("matrix row count mismatch");
  }
  CMatrix a(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) {
      throw std::runtime_error("matrix column count mismatch");
    }
    for (int c = 0; c < n; ++c) a(r, c) = parse_complex(j[r][c]);
  }
  return a;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

std::string phase_point_to_json(const PhasePoint& x) {
  std::string out = "{\"N\":" + std::to_string(x.size());
  out += ",\"u\":" + fmt_vector(x.u);
  out += ",\"w\":" + fmt_vector(x.w);
  out += ",\"p\":" + fmt_matrix(x.p);
  out += "}\n";
  return out;
}

PhasePoint phase_point_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int n = j.at("N").get<int>();
  const auto& ju = j.at("u");
  const auto& jw = j.at("w");
  if (static_cast<int>(ju.size()) != n || static_cast<int>(jw.size()) != n) {
    throw std::runtime_error("u/w length disagrees with N");
  }
  CVector u(n), w(n);
  for (int i = 0; i < n; ++i) {
    u(i) = parse_complex(ju[i]);
    w(i) = parse_complex(jw[i]);
  }
  return make_phase_point(std::move(u), std::move(w),
                          parse_matrix(j.at("p"), n));
}

void write_phase_point(const PhasePoint& x, const std::string& path) {
  spill(path, phase_point_to_json(x));
}

PhasePoint read_phase_point(const std::string& path) {
  return phase_point_from_json(slurp(path));
}

std::string loop_field_to_json(const LoopField& lf) {
  std::string out = "{\"r\":" + fmt(lf.r) + ",\"K\":" + std::to_string(lf.K);
  out += ",\"coeffs\":[";
  for (int n = -lf.K; n <= lf.K; ++n) {
    if (n > -lf.K) out += ",";
    out += "[" + std::to_string(n) + "," + fmt_matrix(lf.coeff(n)) + "]";
  }
  out += "]}\n";
  return out;
}

LoopField loop_field_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const double r = j.at("r").get<double>();
  const int K = j.at("K").get<int>();
  const auto& coeffs = j.at("coeffs");
  if (static_cast<int>(coeffs.size()) != 2 * K + 1) {
    throw std::runtime_error("loop field needs exactly 2K+1 coefficients");
  }
  int dim = 0;
  for (const auto& entry : coeffs) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::runtime_error("loop coefficients must be [n, matrix] pairs");
    }
    if (dim == 0) dim = static_cast<int>(entry[1].size());
  }
  LoopField lf = make_loop_field(r, K, dim);
  for (const auto& entry : coeffs) {
    const int n = entry[0].get<int>();
    if (n < -K || n > K) throw std::runtime_error("coefficient index out of band");
    lf.coeff(n) = parse_matrix(entry[1], dim);
  }
  return lf;
}

void write_loop_field(const LoopField& lf, const std::string& path) {
  spill(path, loop_field_to_json(lf));
}

LoopField read_loop_field(const std::string& path) {
  return loop_field_from_json(slurp(path));
}

}  // namespace hitchin
