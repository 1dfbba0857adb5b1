// instsym: command-line front end for the ADHM symmetry toolkit.
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "instsym/fields.hpp"
#include "instsym/json_io.hpp"
#include "instsym/liealg.hpp"
#include "instsym/registry.hpp"
#include "instsym/symmetry.hpp"

using namespace instsym;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

DataFile load_data(const std::string& path) { return data_from_json(parse_json_text(read_input(path))); }

StandardData load_standard(const std::string& path) {
  DataFile f = load_data(path);
  if (auto* d = std::get_if<StandardData>(&f)) return *d;
  return reduce_standard(std::get<ADHMPair>(f)).data;
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << text << "\n";
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  return v;
}

Quaternion parse_quaternion(const std::string& s) {
  auto v = parse_list(s);
  if (v.empty() || v.size() > 4) throw UsageError("a point needs 1 to 4 comma-separated components");
  v.resize(4, 0.0);
  return {v[0], v[1], v[2], v[3]};
}

std::array<double, 3> parse_triple(const std::string& s) {
  auto v = parse_list(s);
  if (v.size() != 3) throw UsageError("expected three comma-separated numbers: '" + s + "'");
  return {v[0], v[1], v[2]};
}

SymmetryKind parse_kind_or_throw(const std::string& name, double t) {
  auto k = parse_kind(name, t);
  if (!k) throw UsageError("unknown symmetry kind '" + name + "' (or t outside [0, 1])");
  return *k;
}

struct Common {
  double tol = 1e-10;
  double grid_step = 0.05;
  double radius_margin = 1.05;
  std::string json_out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol", c.tol, "numerical tolerance")->capture_default_str();
  app->add_option("--grid-step", c.grid_step, "PD grid spacing as a fraction of the radius")->capture_default_str();
  app->add_option("--radius-margin", c.radius_margin, "PD radius factor on |Mhat|_2")->capture_default_str();
  app->add_option("--json-out", c.json_out, "write JSON here instead of stdout");
}

RMat circle_generator(const StandardData& d, double t, const std::string& cert_path) {
  if (!cert_path.empty()) {
    SymmetryCertificate c = certificate_from_json(parse_json_text(read_input(cert_path)));
    if (c.kind.tag != KindTag::circular || std::abs(c.kind.t - t) > 1e-12)
      throw UsageError("certificate is not a circular(" + std::to_string(t) + ") certificate");
    return c.generators.at(0).real_matrix();
  }
  SolveResult r = solve_generators(d, {KindTag::circular, t});
  if (!r.nonempty())
    throw std::runtime_error("no circular(" + std::to_string(t) + ") certificate for this data: " + r.diagnostic);
  return r.certificates[0].generators[0].real_matrix();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ADHM data toolkit: validation, symmetry certificates, monopole fields"};
  app.require_subcommand(1);
  std::cout << std::setprecision(std::numeric_limits<double>::max_digits10);

  Common common;
  std::string file;

  // example
  auto* ex = app.add_subcommand("example", "print registry data as JSON");
  std::string ex_name;
  ExampleParams ex_params;
  std::string alphas;
  ex->add_option("name", ex_name, "basic | m0-family | iso-ex | rot-ex | not-in-ms | not-in-ms-converted | rank-deficient")
      ->required();
  ex->add_option("--lambda", ex_params.lambda, "scale for iso-ex and rot-ex");
  ex->add_option("--B", ex_params.B, "parameter for the not-in-ms family");
  ex->add_option("--alphas", alphas, "comma-separated diagonal of L for m0-family");
  add_common(ex, common);

  // validate
  auto* val = app.add_subcommand("validate", "check the ADHM conditions");
  std::string domain = "full";
  val->add_option("file", file, "data file, '-' for stdin");
  val->add_option("--domain", domain, "reduced PD domain: full | circular | toral | simple_spherical | isoclinic");
  add_common(val, common);

  // reduce
  auto* red = app.add_subcommand("reduce", "bring a pair (a, b) to standard form");
  red->add_option("file", file, "data file, '-' for stdin");
  add_common(red, common);

  // symmetry
  auto* sym = app.add_subcommand("symmetry", "solve for or check symmetry certificates");
  std::string kind_name_arg, check_path;
  double t = 0;
  bool solve_flag = false;
  sym->add_option("kind", kind_name_arg, "symmetry kind")->required();
  sym->add_option("file", file, "data file, '-' for stdin");
  sym->add_option("--t", t, "ratio for the circular kind");
  auto* solve_opt = sym->add_flag("--solve", solve_flag, "solve for a certificate (default)");
  sym->add_option("--check", check_path, "certificate file to evaluate")->excludes(solve_opt);
  add_common(sym, common);

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "eigenvalues of Delta(x)^dagger Delta(x)");
  std::vector<std::string> xs;
  spec->add_option("file", file, "data file, '-' for stdin");
  spec->add_option("--x", xs, "point as w[,x[,y[,z]]]; repeatable")->required();
  add_common(spec, common);

  // field
  auto* fld = app.add_subcommand("field", "monopole fields and orbit holonomy");
  std::string mode = "hyperbolic", cert_path;
  std::vector<std::string> pts;
  int steps = 512;
  double section_theta = 0;
  fld->add_option("file", file, "data file, '-' for stdin");
  fld->add_option("--mode", mode, "hyperbolic | singular | holonomy")->check(CLI::IsMember({"hyperbolic", "singular", "holonomy"}));
  fld->add_option("--point", pts, "X as three comma-separated reals; repeatable")->required();
  fld->add_option("--cert", cert_path, "circular certificate file (solved when absent)");
  fld->add_option("--steps", steps, "holonomy steps")->capture_default_str();
  fld->add_option("--section-theta", section_theta, "phase of the Hopf section (singular mode)");
  add_common(fld, common);

  // chakrabarti
  auto* chk = app.add_subcommand("chakrabarti", "closed-form |Phi|(r) profile");
  double C = 1.5, r = 0.5;
  chk->add_option("--C", C, "C > 1")->required();
  chk->add_option("--r", r, "radius")->required();
  add_common(chk, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    GridSpec grid;
    grid.tol = common.tol;
    grid.step_frac = common.grid_step;
    grid.radius_margin = common.radius_margin;

    if (*ex) {
      if (!alphas.empty()) ex_params.alphas = parse_list(alphas);
      if (ex_name == "rank-deficient") {
        emit(to_json(rank_deficient_pair()), common.json_out);
        return kOk;
      }
      emit(to_json(make_example(ex_name, ex_params)), common.json_out);
      return kOk;
    }

    if (*val) {
      auto dom = parse_domain(domain);
      if (!dom) throw UsageError("unknown domain '" + domain + "'");
      grid.domain = *dom;
      DataFile f = load_data(file);
      ValidationReport rep =
          std::holds_alternative<StandardData>(f) ? validate(std::get<StandardData>(f), grid)
                                                  : validate_pair(std::get<ADHMPair>(f), grid);
      emit(to_json(rep), common.json_out);
      if (!rep.ok())
        for (const auto& c : rep.checks)
          if (!c.pass) std::cerr << "check failed: " << c.name << (c.message.empty() ? "" : ": " + c.message) << "\n";
      return rep.ok() ? kOk : kCheckFailed;
    }

    if (*red) {
      DataFile f = load_data(file);
      if (auto* d = std::get_if<StandardData>(&f)) {
        emit({{"data", to_json(*d)}, {"gauge", to_json(GaugeElement::identity(d->n, d->k))}}, common.json_out);
        return kOk;
      }
      Reduction rd = reduce_standard(std::get<ADHMPair>(f), common.tol);
      emit({{"data", to_json(rd.data)}, {"gauge", to_json(rd.gauge)}}, common.json_out);
      return kOk;
    }

    if (*sym) {
      SymmetryKind kind = parse_kind_or_throw(kind_name_arg, t);
      StandardData d = load_standard(file);
      if (!check_path.empty()) {
        SymmetryCertificate c = certificate_from_json(parse_json_text(read_input(check_path)));
        if (c.kind.tag != kind.tag) throw UsageError("certificate kind does not match " + kind_name_arg);
        double res = std::max(residual(d, c), homomorphism_residual(c));
        emit({{"kind", kind_name(c.kind)}, {"residual", res}}, common.json_out);
        return res <= 1e-9 ? kOk : kCheckFailed;
      }
      SolveResult r = solve_generators(d, kind);
      emit(to_json(r), common.json_out);
      if (r.status == SolveStatus::indeterminate) std::cerr << r.diagnostic << "\n";
      return r.nonempty() ? kOk : kCheckFailed;
    }

    if (*spec) {
      StandardData d = load_standard(file);
      json rows = json::array();
      for (const auto& s : xs) {
        Quaternion x = parse_quaternion(s);
        QuatMatrix dd = delta(d, x);
        RVec ev = hermitian_eigenvalues(dd.adjoint() * dd);
        rows.push_back({{"x", to_json(x)}, {"eigenvalues", std::vector<double>(ev.data(), ev.data() + ev.size())}});
      }
      emit(rows, common.json_out);
      return kOk;
    }

    if (*fld) {
      StandardData d = load_standard(file);
      json rows = json::array();
      if (mode == "holonomy") {
        for (const auto& s : pts) {
          auto X = parse_triple(s);
          Quaternion x(0, X[0], X[1], X[2]);
          if (x.norm2() == 0) throw UsageError("holonomy needs a ball point other than the origin");
          Quaternion xi = x / x.norm2();
          auto h = orbit_holonomy(d, ms_generator(), x, steps);
          auto hi = orbit_holonomy(d, ms_generator(), xi, steps);
          rows.push_back({{"X", X}, {"phases", h.phases}, {"inverted_phases", hi.phases}});
        }
      } else {
        const double tt = mode == "hyperbolic" ? 1.0 : 0.0;
        RMat rho = circle_generator(d, tt, cert_path);
        for (const auto& s : pts) {
          auto X = parse_triple(s);
          MonopoleSample m = mode == "hyperbolic" ? higgs_hyperbolic(d, rho, X) : higgs_singular(d, rho, X, section_theta);
          rows.push_back(to_json(m));
        }
      }
      emit(rows, common.json_out);
      return kOk;
    }

    if (*chk) {
      emit({{"C", C}, {"r", r}, {"|Phi|", chakrabarti_profile(C, r)}, {"mass", chakrabarti_mass(C)}}, common.json_out);
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
