// hitchin-lab: one binary over the whole library. Exit codes: 0 success,
// 1 domain error (JSON diagnostic on stderr), 2 usage error.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitchin/dynamics.hpp"
#include "hitchin/errors.hpp"
#include "hitchin/lax.hpp"
#include "hitchin/loop_field.hpp"
#include "hitchin/phase_io.hpp"
#include "hitchin/phase_space.hpp"
#include "hitchin/rng.hpp"
#include "hitchin/schottky.hpp"
#include "hitchin/special_functions.hpp"

namespace {

using hitchin::CMatrix;
using hitchin::Complex;
using hitchin::CVector;
using hitchin::ModularParameter;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pair17(Complex c) { return fmt17(c.real()) + " " + fmt17(c.imag()); }

std::string json_complex(Complex c) {
  return "[" + fmt17(c.real()) + "," + fmt17(c.imag()) + "]";
}

std::string json_matrix(const CMatrix& a) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c) out += ",";
      out += json_complex(a(r, c));
    }
    out += "]";
  }
  return out + "]";
}

double parse_double_strict(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

Complex parse_complex_arg(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c) != 0; }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  const char tail = s.back();
  if (tail != 'i' && tail != 'I') return {parse_double_strict(s), 0.0};
  s.pop_back();
  if (s.empty() || s == "+") return {0.0, 1.0};
  if (s == "-") return {0.0, -1.0};
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_double_strict(s)};
  const double re = parse_double_strict(s.substr(0, split));
  const std::string im = s.substr(split);
  if (im == "+") return {re, 1.0};
  if (im == "-") return {re, -1.0};
  return {re, parse_double_strict(im)};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_linspace(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("axis spec must be lo:hi:count, got " + spec);
  }
  const double lo = parse_double_strict(parts[0]);
  const double hi = parse_double_strict(parts[1]);
  const int n = std::stoi(parts[2]);
  if (n < 1) throw std::invalid_argument("axis count must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
  } else {
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(lo + step * i);
  }
  return out;
}

std::vector<Complex> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument("grid spec must be reAxis,imAxis");
  }
  const std::vector<double> res = parse_linspace(parts[0]);
  const std::vector<double> ims = parse_linspace(parts[1]);
  std::vector<Complex> grid;
  grid.reserve(res.size() * ims.size());
  for (const double im : ims) {
    for (const double re : res) grid.emplace_back(re, im);
  }
  return grid;
}

std::vector<Complex> parse_complex_list(const std::string& spec) {
  std::vector<Complex> out;
  for (const std::string& tok : split(spec, ',')) {
    if (!tok.empty()) out.push_back(parse_complex_arg(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty complex list");
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (const std::string& tok : split(spec, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

// Weight spec: entries n:re or n:re:im joined by ';', e.g. "0:1" or "1:0:2;-1:0.5".
hitchin::LaurentWeight parse_weight(const std::string& spec) {
  hitchin::LaurentWeight nu;
  for (const std::string& tok : split(spec, ';')) {
    if (tok.empty()) continue;
    const auto parts = split(tok, ':');
    if (parts.size() != 2 && parts.size() != 3) {
      throw std::invalid_argument("weight entry must be n:re[:im]");
    }
    const int n = std::stoi(parts[0]);
    const double re = parse_double_strict(parts[1]);
    const double im = parts.size() == 3 ? parse_double_strict(parts[2]) : 0.0;
    nu.coeffs[n] = Complex(re, im);
  }
  if (nu.coeffs.empty()) throw std::invalid_argument("empty weight spec");
  return nu;
}

Complex json_to_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

hitchin::SpinKind parse_kind(const std::string& kind) {
  if (kind == "random") return hitchin::SpinKind::random;
  if (kind == "rank1-spin") return hitchin::SpinKind::rank1;
  if (kind == "spinless") return hitchin::SpinKind::spinless;
  throw std::invalid_argument("kind must be random, rank1-spin or spinless");
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// ---- subcommand bodies ----

void run_specialfn(const std::string& fn, const std::string& zeta_s,
                   const std::string& tau_s, int order) {
  const ModularParameter m(parse_complex_arg(tau_s));
  const Complex zeta = zeta_s.empty() ? Complex(0.0, 0.0) : parse_complex_arg(zeta_s);
  Complex value;
  if (fn == "theta1") {
    value = order == 0 ? hitchin::theta1(zeta, m)
                       : hitchin::theta1_deriv(zeta, m, order);
  } else if (fn == "theta-paper") {
    value = hitchin::theta_paper(zeta, m);
  } else if (fn == "wp") {
    value = hitchin::wp(zeta, m);
  } else if (fn == "wp-deriv") {
    value = hitchin::wp_deriv(zeta, m);
  } else if (fn == "e2") {
    value = hitchin::eisenstein_e2(m);
  } else {
    throw std::invalid_argument("unknown function " + fn);
  }
  std::cout << pair17(value) << "\n";
}

hitchin::SchottkyGroup group_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  hitchin::SchottkyGroup grp;
  grp.genus = j.at("genus").get<int>();
  for (const auto& g : j.at("generators")) {
    grp.generators.emplace_back(json_to_complex(g.at("a")), json_to_complex(g.at("b")),
                                json_to_complex(g.at("c")), json_to_complex(g.at("d")));
  }
  const auto circle = [](const nlohmann::json& c) {
    hitchin::Circle out;
    out.center = json_to_complex(c.at("center"));
    out.radius = c.at("radius").get<double>();
    out.exterior = c.value("exterior", false);
    return out;
  };
  for (const auto& pairj : j.at("circles")) {
    if (!pairj.is_array() || pairj.size() != 2) {
      throw std::invalid_argument("each circles entry must be a pair");
    }
    grp.circles.emplace_back(circle(pairj[0]), circle(pairj[1]));
  }
  return grp;
}

void run_evolve(const std::string& phase_file, const std::string& tau_s,
                double dt, int steps, const std::string& integrator,
                const std::string& zetas_s, int jmax, int record_every,
                const std::string& out_csv) {
  const ModularParameter m(parse_complex_arg(tau_s));
  const hitchin::PhasePoint x0 = hitchin::read_phase_point(phase_file);
  hitchin::FlowConfig cfg;
  cfg.dt = dt;
  cfg.steps = steps;
  cfg.record_every = record_every;
  if (integrator == "rk4") {
    cfg.integrator = hitchin::Integrator::rk4;
  } else if (integrator == "midpoint") {
    cfg.integrator = hitchin::Integrator::implicit_midpoint;
  } else {
    throw std::invalid_argument("integrator must be rk4 or midpoint");
  }
  const std::vector<Complex> zetas = parse_complex_list(zetas_s);

  const hitchin::Trajectory traj = hitchin::integrate(x0, cfg, m);
  const hitchin::ConservationReport rep =
      hitchin::conservation_report(traj, zetas, jmax, m);

  const int N = x0.size();
  std::string csv = "t,H_re,H_im";
  for (int k = 1; k <= N; ++k) {
    csv += ",cas" + std::to_string(k) + "_re,cas" + std::to_string(k) + "_im";
  }
  for (std::size_t z = 0; z < zetas.size(); ++z) {
    for (int i = 0; i < N; ++i) {
      const std::string base = "eig_z" + std::to_string(z) + "_" + std::to_string(i);
      csv += "," + base + "_re," + base + "_im";
    }
  }
  for (int j = 1; j <= jmax; ++j) {
    csv += ",tr_eta" + std::to_string(j) + "_re,tr_eta" + std::to_string(j) + "_im";
  }
  csv += "\n";
  for (std::size_t s = 0; s < rep.times.size(); ++s) {
    csv += fmt17(rep.times[s]);
    csv += "," + fmt17(rep.H[s].real()) + "," + fmt17(rep.H[s].imag());
    for (const Complex c : rep.casimirs[s]) {
      csv += "," + fmt17(c.real()) + "," + fmt17(c.imag());
    }
    for (const auto& per_zeta : rep.eigenvalues[s]) {
      for (const Complex ev : per_zeta) {
        csv += "," + fmt17(ev.real()) + "," + fmt17(ev.imag());
      }
    }
    for (const Complex tr : rep.tr_eta[s]) {
      csv += "," + fmt17(tr.real()) + "," + fmt17(tr.imag());
    }
    csv += "\n";
  }
  write_file(out_csv, csv);

  std::string sidecar = out_csv;
  const std::string suffix = ".csv";
  if (sidecar.size() > suffix.size() &&
      sidecar.compare(sidecar.size() - suffix.size(), suffix.size(), suffix) == 0) {
    sidecar.resize(sidecar.size() - suffix.size());
  }
  sidecar += ".drifts.json";
  std::string dj = "{";
  bool first = true;
  for (const auto& [key, value] : rep.drifts) {
    if (!first) dj += ",";
    first = false;
    dj += "\"" + key + "\":" + fmt17(value);
  }
  dj += "}\n";
  write_file(sidecar, dj);

  std::cout << out_csv << "\n" << sidecar << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic spin-system laboratory"};
  app.require_subcommand(1);

  // specialfn eval
  auto* sf = app.add_subcommand("specialfn", "special function evaluation");
  sf->require_subcommand(1);
  auto* sfe = sf->add_subcommand("eval", "evaluate one function at one point");
  std::string sf_fn, sf_zeta, sf_tau;
  int sf_order = 0;
  sfe->add_option("--fn", sf_fn, "theta1 | theta-paper | wp | wp-deriv | e2")
      ->required();
  sfe->add_option("--zeta", sf_zeta, "argument a+bi (unused for e2)");
  sfe->add_option("--tau", sf_tau, "modular parameter a+bi, Im > 0")->required();
  sfe->add_option("--order", sf_order, "theta1 derivative order 0..3");
  sfe->callback([&] { run_specialfn(sf_fn, sf_zeta, sf_tau, sf_order); });

  // schottky check / dim
  auto* sc = app.add_subcommand("schottky", "Schottky group utilities");
  sc->require_subcommand(1);
  auto* scc = sc->add_subcommand("check", "validate a group config file");
  std::string sc_config;
  scc->add_option("--config", sc_config, "group JSON file")->required();
  scc->callback([&] {
    hitchin::validate(group_from_config(sc_config));
    std::cout << "ok\n";
  });
  auto* scd = sc->add_subcommand("dim", "moduli dimension for (N, g)");
  int scd_N = 2, scd_g = 2, scd_trials = 5;
  std::uint64_t scd_seed = 0;
  bool scd_numeric = false;
  scd->add_option("--N", scd_N, "matrix rank")->required();
  scd->add_option("--g", scd_g, "genus >= 2")->required();
  scd->add_flag("--numeric", scd_numeric, "also measure the dimension by SVD");
  scd->add_option("--trials", scd_trials, "random tuples for --numeric");
  scd->add_option("--seed", scd_seed, "seed for --numeric");
  scd->callback([&] {
    const long formula = hitchin::moduli_dimension_formula(scd_N, scd_g);
    if (!scd_numeric) {
      std::cout << formula << "\n";
      return;
    }
    const long numeric =
        hitchin::moduli_dimension_numeric(scd_N, scd_g, scd_trials, scd_seed);
    std::cout << "formula " << formula << "\n" << "numeric " << numeric << "\n";
  });

  // phase generate / validate
  auto* ph = app.add_subcommand("phase", "phase-point files");
  ph->require_subcommand(1);
  auto* phg = ph->add_subcommand("generate", "draw a random phase point");
  int phg_N = 3;
  std::string phg_kind = "random", phg_out, phg_tau;
  std::uint64_t phg_seed = 0;
  phg->add_option("--N", phg_N, "number of bodies, >= 2")->required();
  phg->add_option("--kind", phg_kind, "random | rank1-spin | spinless");
  phg->add_option("--seed", phg_seed, "RNG seed (default 0)");
  phg->add_option("--tau", phg_tau, "separate positions against this lattice");
  phg->add_option("--out", phg_out, "output JSON path")->required();
  phg->callback([&] {
    hitchin::PhasePoint x;
    if (phg_tau.empty()) {
      x = hitchin::random_phase_point(phg_N, parse_kind(phg_kind), phg_seed);
    } else {
      const ModularParameter m(parse_complex_arg(phg_tau));
      x = hitchin::random_phase_point(phg_N, parse_kind(phg_kind), phg_seed, &m);
    }
    hitchin::write_phase_point(x, phg_out);
    std::cout << phg_out << "\n";
  });
  auto* phv = ph->add_subcommand("validate", "check a phase-point file");
  std::string phv_file;
  phv->add_option("--phase", phv_file, "phase JSON file")->required();
  phv->callback([&] {
    const hitchin::PhasePoint x = hitchin::read_phase_point(phv_file);
    std::cout << "ok N=" << x.size() << "\n";
  });

  // lax eval / invariants / hitchin / moment-check / plemelj
  auto* lx = app.add_subcommand("lax", "Lax matrix and spectral invariants");
  lx->require_subcommand(1);

  auto* lxe = lx->add_subcommand("eval", "evaluate the Lax matrix");
  std::string lxe_phase, lxe_zeta, lxe_tau;
  lxe->add_option("--phase", lxe_phase)->required();
  lxe->add_option("--zeta", lxe_zeta)->required();
  lxe->add_option("--tau", lxe_tau)->required();
  lxe->callback([&] {
    const ModularParameter m(parse_complex_arg(lxe_tau));
    const hitchin::PhasePoint x = hitchin::read_phase_point(lxe_phase);
    const hitchin::LaxSample s =
        hitchin::lax_matrix(x, parse_complex_arg(lxe_zeta), m);
    std::cout << "{\"zeta\":" << json_complex(s.zeta)
              << ",\"matrix\":" << json_matrix(s.matrix) << "}\n";
  });

  auto* lxi = lx->add_subcommand("invariants", "tr eta^j on a zeta grid (CSV)");
  std::string lxi_phase, lxi_tau, lxi_j = "1,2,3", lxi_grid;
  lxi->add_option("--phase", lxi_phase)->required();
  lxi->add_option("--tau", lxi_tau)->required();
  lxi->add_option("--j", lxi_j, "comma-separated powers");
  lxi->add_option("--grid", lxi_grid, "re0:re1:n,im0:im1:m")->required();
  lxi->callback([&] {
    const ModularParameter m(parse_complex_arg(lxi_tau));
    const hitchin::PhasePoint x = hitchin::read_phase_point(lxi_phase);
    const std::vector<int> js = parse_int_list(lxi_j);
    const std::vector<Complex> grid = parse_grid(lxi_grid);
    std::string csv = "zeta_re,zeta_im";
    for (const int j : js) {
      csv += ",tr" + std::to_string(j) + "_re,tr" + std::to_string(j) + "_im";
    }
    csv += "\n";
    for (const Complex zeta : grid) {
      csv += fmt17(zeta.real()) + "," + fmt17(zeta.imag());
      const CMatrix eta = hitchin::lax_matrix(x, zeta, m).matrix;
      for (const int j : js) {
        CMatrix pw = eta;
        for (int i = 1; i < j; ++i) pw = pw * eta;
        const Complex tr = pw.trace();
        csv += "," + fmt17(tr.real()) + "," + fmt17(tr.imag());
      }
      csv += "\n";
    }
    std::cout << csv;
  });

  auto* lxh = lx->add_subcommand("hitchin", "A-cycle quadrature of nu tr eta^j");
  std::string lxh_phase, lxh_tau, lxh_nu = "0:1";
  int lxh_j = 2, lxh_M = 128;
  double lxh_cim = -1.0;
  lxh->add_option("--phase", lxh_phase)->required();
  lxh->add_option("--tau", lxh_tau)->required();
  lxh->add_option("--j", lxh_j, "trace power");
  lxh->add_option("--M", lxh_M, "quadrature nodes");
  lxh->add_option("--contour-im", lxh_cim, "contour height (default Im tau / 2)");
  lxh->add_option("--nu", lxh_nu, "weight spec n:re[:im];...");
  lxh->callback([&] {
    const ModularParameter m(parse_complex_arg(lxh_tau));
    const hitchin::PhasePoint x = hitchin::read_phase_point(lxh_phase);
    const double cim = lxh_cim > 0.0 ? lxh_cim : m.tau.imag() / 2.0;
    const Complex val = hitchin::hitchin_integral(x, lxh_j, parse_weight(lxh_nu),
                                                  cim, m, lxh_M);
    std::cout << pair17(val) << "\n";
  });

  auto* lxm = lx->add_subcommand("moment-check", "max twist residual at random zeta");
  std::string lxm_phase, lxm_tau;
  int lxm_samples = 100;
  std::uint64_t lxm_seed = 0;
  lxm->add_option("--phase", lxm_phase)->required();
  lxm->add_option("--tau", lxm_tau)->required();
  lxm->add_option("--samples", lxm_samples);
  lxm->add_option("--seed", lxm_seed);
  lxm->callback([&] {
    const ModularParameter m(parse_complex_arg(lxm_tau));
    const hitchin::PhasePoint x = hitchin::read_phase_point(lxm_phase);
    hitchin::Rng rng(lxm_seed);
    double worst = 0.0;
    for (int s = 0; s < lxm_samples; ++s) {
      const double a = rng.uniform(0.0, 1.0);
      const double b = rng.uniform(0.1, 0.9);
      worst = std::max(worst, hitchin::moment_residual(x, a + b * m.tau, m));
    }
    std::cout << fmt17(worst) << "\n";
  });

  auto* lxp = lx->add_subcommand("plemelj", "split a loop into inside/outside parts");
  std::string lxp_loop;
  lxp->add_option("--loop", lxp_loop, "loop-field JSON file")->required();
  lxp->callback([&] {
    const hitchin::LoopField boundary = hitchin::read_loop_field(lxp_loop);
    const auto [inside, outside] = hitchin::plemelj_split(boundary);
    const std::string in_path = lxp_loop + ".inside.json";
    const std::string out_path = lxp_loop + ".outside.json";
    hitchin::write_loop_field(inside, in_path);
    hitchin::write_loop_field(outside, out_path);
    std::cout << in_path << "\n" << out_path << "\n";
  });

  // evolve
  auto* ev = app.add_subcommand("evolve", "integrate the flow and report drifts");
  std::string ev_phase, ev_tau, ev_integrator = "rk4", ev_zetas = "0.3+0.4i", ev_out;
  double ev_dt = 1e-3;
  int ev_steps = 1000, ev_jmax = 3, ev_record = 1;
  ev->add_option("--phase", ev_phase)->required();
  ev->add_option("--tau", ev_tau)->required();
  ev->add_option("--dt", ev_dt);
  ev->add_option("--steps", ev_steps);
  ev->add_option("--integrator", ev_integrator, "rk4 | midpoint");
  ev->add_option("--zetas", ev_zetas, "comma-separated spectral points");
  ev->add_option("--jmax", ev_jmax, "trace powers recorded");
  ev->add_option("--record-every", ev_record);
  ev->add_option("--out", ev_out, "trajectory CSV path")->required();
  ev->callback([&] {
    run_evolve(ev_phase, ev_tau, ev_dt, ev_steps, ev_integrator, ev_zetas,
               ev_jmax, ev_record, ev_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const hitchin::Error& e) {
    std::cerr << "{\"error\":\"" << e.code() << "\",\"detail\":\""
              << json_escape(e.what()) << "\"}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"invalid_argument\",\"detail\":\""
              << json_escape(e.what()) << "\"}\n";
    return 1;
  }
  return 0;
}
