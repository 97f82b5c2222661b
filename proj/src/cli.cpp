#include "thomform/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thomform/km.hpp"
#include "thomform/mq.hpp"
#include "thomform/theta.hpp"
#include "thomform/verification.hpp"

namespace thomform {

namespace {

struct Options {
  std::string format;
  bool no_timing = false;

  // emit
  std::string form;
  int p = 0, q = 0;
  // verify
  bool all = false;
  int max_pq = 0;
  std::vector<std::string> checks;
  std::optional<int> p2, q2, n;
  std::optional<std::string> t, x, xp;
  // fiber
  std::string op = "umq";
  // theta
  std::string lattice;
  std::string tau = "i";
  double bound = 4.0;
};

SignatureCtx checked_signature(int p, int q) {
  if (p < 1 || q < 1) throw Error("--p and --q must be at least 1");
  if (p + q > max_pq_cap()) {
    throw Error("p+q = " + std::to_string(p + q) + " exceeds the size cap " +
                std::to_string(max_pq_cap()));
  }
  return SignatureCtx(p, q);
}

void print_form(const SuperForm& f, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << f.to_json().dump(2) << "\n";
  } else {
    out << f.str() << "\n";
  }
}

int run_emit(const Options& o, std::ostream& out) {
  SignatureCtx ctx = checked_signature(o.p, o.q);
  SuperForm f;
  if (o.form == "km") {
    f = km_form_at_e(ctx);
  } else if (o.form == "km-hermite") {
    f = km_closed_form(ctx);
  } else if (o.form == "mq0") {
    f = mq_phi0_at_e(ctx);
  } else if (o.form == "mq") {
    f = mq_phi_at_e(ctx);
  } else if (o.form == "curvature") {
    f = curvature_at_e(ctx);
  } else {
    throw Error("unknown form '" + o.form + "'");
  }
  print_form(f, o, out);
  return 0;
}

std::string result_line(const CheckResult& r) {
  std::string line = r.passed() ? "PASS" : (r.status == CheckStatus::kFail ? "FAIL" : "SKIP");
  line += " " + r.check_id;
  for (const auto& [k, v] : r.params.items()) line += " " + k + "=" + v.dump();
  if (r.sign_sigma) line += " sigma=" + std::to_string(*r.sign_sigma);
  if (r.recorded_sign) line += " sign=" + std::to_string(*r.recorded_sign);
  if (!r.witness.empty()) line += " :: " + r.witness;
  return line;
}

int run_verify(const Options& o, std::ostream& out) {
  const bool timing = !o.no_timing;
  if (o.all) {
    int max_pq = o.max_pq > 0 ? o.max_pq : std::min(7, max_pq_cap());
    std::vector<CheckResult> results = run_all(max_pq, o.checks);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.status != CheckStatus::kFail;
    if (o.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : results) arr.push_back(r.to_json(timing));
      nlohmann::json report = {{"schema", "thomform/1"},
                               {"max_pq", max_pq},
                               {"results", arr},
                               {"status", ok ? "pass" : "fail"}};
      out << report.dump(2) << "\n";
    } else {
      for (const auto& r : results) out << result_line(r) << "\n";
      out << (ok ? "ALL PASS" : "SOME CHECKS FAILED") << "\n";
    }
    return ok ? 0 : 1;
  }
  if (o.checks.size() != 1) throw Error("verify needs --all or exactly one --check");
  CheckParams params;
  if (o.p > 0) params.p = o.p;
  if (o.q > 0) params.q = o.q;
  params.p2 = o.p2;
  params.q2 = o.q2;
  params.n = o.n;
  if (o.t) params.t = parse_rational(*o.t);
  if (o.x) params.x = parse_rational(*o.x);
  if (o.xp) params.xp = parse_rational(*o.xp);
  CheckResult r = run_check(o.checks.front(), params);
  if (o.format == "json") {
    out << r.to_json(timing).dump(2) << "\n";
  } else {
    out << result_line(r) << "\n";
  }
  return r.status == CheckStatus::kFail ? 1 : 0;
}

int run_fiber(const Options& o, std::ostream& out) {
  if (o.q < 1 || o.q > max_pq_cap()) throw Error("--q must be in 1.." + std::to_string(max_pq_cap()));
  FiberForm f;
  if (o.op == "umq") {
    f = fiber_umq(o.q);
  } else if (o.op == "psi") {
    f = fiber_transgression(o.q);
  } else if (o.op == "integrate") {
    Scalar v = fiber_integrate(fiber_umq(o.q));
    if (o.format == "json") {
      out << nlohmann::json{{"schema", "thomform/1"}, {"q", o.q}, {"integral", v.str()}}.dump(2)
          << "\n";
    } else {
      out << v.str() << "\n";
    }
    return 0;
  } else {
    throw Error("unknown fiber op '" + o.op + "'");
  }
  if (o.t) {
    f = *o.t == "t" ? fiber_scale_pullback_symbolic(f) : fiber_scale_pullback(f, parse_rational(*o.t));
  }
  print_form(f, o, out);
  return 0;
}

int run_example11(const Options& o, std::ostream& out) {
  Rational t = o.t ? parse_rational(*o.t) : Rational(1);
  Rational x = o.x ? parse_rational(*o.x) : Rational(1);
  Rational xp = o.xp ? parse_rational(*o.xp) : Rational(0);
  if (t <= 0) throw Error("--t must be positive");
  Example11Values v = example11_values(to_double(t), to_double(x), to_double(xp));
  const double diff = v.machinery - v.closed_form;
  if (o.format == "json") {
    out << nlohmann::json{{"schema", "thomform/1"},
                          {"t", to_string(t)},
                          {"x", to_string(x)},
                          {"xp", to_string(xp)},
                          {"machinery", v.machinery},
                          {"closed_form", v.closed_form},
                          {"difference", diff}}
               .dump(2)
        << "\n";
  } else {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "machinery:   " << v.machinery << "\n";
    os << "closed form: " << v.closed_form << "\n";
    os << "difference:  " << diff << "\n";
    out << os.str();
  }
  return 0;
}

int run_theta(const Options& o, std::ostream& out) {
  std::ifstream in(o.lattice);
  if (!in) throw Error("cannot open lattice file '" + o.lattice + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("lattice file is not valid JSON: ") + e.what());
  }
  LatticeSpec spec = LatticeSpec::from_json(j);
  if (spec.p + spec.q > max_pq_cap()) throw Error("lattice rank exceeds the size cap");
  DiagonalizedLattice dl = diagonalize_gram(spec);
  ThetaResult r = theta_partial_sum(dl, parse_complex(o.tau), o.bound);
  if (o.format == "json") {
    nlohmann::json report = r.to_json();
    report["label"] = spec.label;
    out << report.dump(2) << "\n";
  } else {
    std::ostringstream os;
    os << std::setprecision(15);
    os << "lattice " << spec.label << " (" << spec.p << "," << spec.q << ")  tau = " << r.tau.real()
       << (r.tau.imag() < 0 ? "" : "+") << r.tau.imag() << "i  bound = " << r.bound
       << "  vectors = " << r.vectors << "\n";
    for (const auto& [k, v] : r.coefficients) os << k << "  " << v.real() << " " << v.imag() << "\n";
    os << "tail estimate " << r.tail_estimate << "\n";
    out << os.str();
  }
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kudla-Millson and Mathai-Quillen forms, exactly", "thomform"};
  app.require_subcommand(1);
  Options o;
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* emit = app.add_subcommand("emit", "Print a form at the basepoint");
  emit->add_option("form", o.form, "km | km-hermite | mq0 | mq | curvature")->required();
  emit->add_option("--p", o.p, "Positive index")->required();
  emit->add_option("--q", o.q, "Negative index")->required();
  add_format(emit);

  CLI::App* verify = app.add_subcommand("verify", "Run named checks");
  verify->add_flag("--all", o.all, "Run the whole suite");
  verify->add_option("--max-pq", o.max_pq, "Largest p+q for --all (default 7)");
  verify->add_option("--check", o.checks, "Check id; with --all it filters");
  verify->add_option("--p", o.p, "Positive index (first block for SPLITTING)");
  verify->add_option("--q", o.q, "Negative index or fiber rank");
  verify->add_option("--p2", o.p2, "SPLITTING second block, positive index");
  verify->add_option("--q2", o.q2, "SPLITTING second block, negative index");
  verify->add_option("--n", o.n, "HOWE_HERMITE degree bound");
  verify->add_option("--t", o.t, "EXAMPLE_11 parameter t");
  verify->add_option("--x", o.x, "EXAMPLE_11 coordinate x");
  verify->add_option("--xp", o.xp, "EXAMPLE_11 coordinate x'");
  verify->add_flag("--no-timing", o.no_timing, "Report elapsed_ms as 0");
  add_format(verify);

  CLI::App* fiber = app.add_subcommand("fiber", "Fiber-level Thom form operations");
  fiber->add_option("--q", o.q, "Fiber rank")->required();
  fiber->add_option("--op", o.op, "umq | psi | integrate")
      ->check(CLI::IsMember({"umq", "psi", "integrate"}));
  fiber->add_option("--t", o.t, "Pull back by x -> t x (rational, or 't' for symbolic)");
  add_format(fiber);

  CLI::App* ex11 = app.add_subcommand("example11", "Signature (1,1) example at one point");
  ex11->add_option("--t", o.t, "Point t > 0 of the upper half line");
  ex11->add_option("--x", o.x, "Coordinate x");
  ex11->add_option("--xp", o.xp, "Coordinate x'");
  add_format(ex11);

  CLI::App* theta = app.add_subcommand("theta", "Theta partial sum over a lattice");
  theta->add_option("--lattice", o.lattice, "Lattice JSON file")->required();
  theta->add_option("--tau", o.tau, "Point of the upper half plane, a+bi");
  theta->add_option("--bound", o.bound, "Majorant norm bound")->check(CLI::NonNegativeNumber);
  add_format(theta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  // text is the default everywhere but verify
  if (o.format.empty()) o.format = verify->parsed() ? "json" : "text";

  try {
    if (emit->parsed()) return run_emit(o, out);
    if (verify->parsed()) return run_verify(o, out);
    if (fiber->parsed()) return run_fiber(o, out);
    if (ex11->parsed()) return run_example11(o, out);
    if (theta->parsed()) return run_theta(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace thomform
