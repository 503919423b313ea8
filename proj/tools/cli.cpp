#include "cli.hpp"

#include "walshlab/experiments.hpp"
#include "walshlab/parallel.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace walshlab::cli {

namespace {

struct Output {
  std::vector<VerificationReport> reports;
  std::optional<Table> table;
};

FloatMartingale to_float(const ExactMartingale& f) {
  const auto& c = f.coefficients();
  FloatCoefficients fc{c.resolution, System::paley, std::vector<double>(c.size())};
  for (Index i = 0; i < c.size(); ++i) fc.coeffs[i] = c.coeffs[i].get_d();
  return FloatMartingale(std::move(fc));
}

Output run_kernel(const RunConfig& c) {
  const System system = parse_system(c.system);
  ExactFunction k = c.kind == "dirichlet" ? dirichlet(system, c.n, c.resolution)
                    : c.kind == "fejer"   ? fejer(system, c.n, c.resolution)
                                          : throw std::invalid_argument("--kind must be dirichlet or fejer");
  VerificationReport r;
  r.claim = "kernel_samples";
  r.parameters = {{"kind", c.kind}, {"system", c.system}, {"n", std::to_string(c.n)},
                  {"resolution", std::to_string(c.resolution)}};
  r.passed = true;
  r.mode = c.exact ? "exact" : "float";
  r.metrics = {{"l1_norm", to_string(lp_quasinorm(k, Rational(1)).exact_value.value())},
               {"value_at_zero", to_string(k[0])}};
  r.witness = Witness{0, c.n, to_string(k[0]), "kernel value at the null element"};
  r.table = kernel_table(k, c.exact);
  return {{r}, r.table};
}

Output run_verify(const RunConfig& c, const std::string& what) {
  if (what == "yano") return {{verify_yano(c.n_max, c.resolution)}, std::nullopt};
  if (what == "lemma2") return {{verify_lemma2(c.A)}, std::nullopt};
  if (what == "identities") return {verify_identities(c.resolution, c.seed, c.exact), std::nullopt};
  throw std::invalid_argument("unknown verification: " + what);
}

Output run_counterexample(const RunConfig& c, const std::string& which) {
  Output out;
  if (which == "t1") {
    const Rational p = parse_rational(c.p);
    const auto family = build_t1(p, c.depth - 1, c.depth);
    out.reports.push_back(audit_family(family));
    out.reports.push_back(divergence_t1(p, c.n_list, c.depth));
  } else if (which == "t2") {
    int levels = 1;
    while (levels < 4 && (1 << (levels + 1)) + 1 <= c.depth) ++levels;
    out.reports.push_back(audit_family(build_t2(levels, c.depth)));
    out.reports.push_back(divergence_t2(c.i_list, c.depth));
  } else {
    throw std::invalid_argument("counterexample must be t1 or t2");
  }
  return out;
}

Output run_converge(const RunConfig& c, const std::string& family_name) {
  const Rational p = parse_rational(c.p);
  ExactMartingale f = [&] {
    if (family_name == "t1") return build_t1(p, c.depth - 1, c.depth).martingale;
    if (family_name == "t2") {
      int levels = 1;
      while (levels < 4 && (1 << (levels + 1)) + 1 <= c.depth) ++levels;
      return build_t2(levels, c.depth).martingale;
    }
    if (family_name == "random") {
      SplitRng rng(c.seed);
      return random_decaying_martingale(c.depth, rng);
    }
    throw std::invalid_argument("--family must be random, t1 or t2");
  }();
  VerificationReport r = c.exact ? convergence_table(f, p, c.n_max)
                                 : convergence_table(to_float(f), p, c.n_max);
  r.parameters.emplace_back("family", family_name);
  return {{r}, std::nullopt};
}

std::string render(const RunConfig& c, const Output& o) {
  if (c.format == OutputFormat::json) return render_json(c, o.reports);
  if (o.table) return render_csv(c, *o.table);
  return render_csv(c, o.reports);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::istringstream words(config.command);
  std::string head, sub;
  words >> head >> sub;
  Output o;
  if (head == "kernel") o = run_kernel(config);
  else if (head == "verify") o = run_verify(config, sub);
  else if (head == "counterexample") o = run_counterexample(config, sub);
  else if (head == "converge") o = run_converge(config, sub.empty() ? "random" : sub);
  else throw std::invalid_argument("unknown command: " + config.command);

  bool ok = true;
  for (const auto& r : o.reports) {
    ok = ok && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.claim;
    if (r.witness) {
      out << "  witness:";
      if (r.witness->n) out << " n=" << *r.witness->n;
      if (r.witness->point) out << " x=" << *r.witness->point;
      out << " value=" << r.witness->value;
      if (!r.witness->note.empty()) out << " (" << r.witness->note << ")";
    }
    out << "  [" << r.mode << ", " << format_double(r.runtime_seconds) << " s]\n";
    for (const auto& [k, v] : r.metrics) out << "    " << k << " = " << v << '\n';
  }
  const std::string body = render(config, o);
  if (config.out.empty()) {
    out << body;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "cannot open output file " << config.out << '\n';
      return 2;
    }
    file << body;
    out << "wrote " << config.out << '\n';
  }
  return ok ? 0 : 1;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"walshlab: dyadic harmonic analysis laboratory"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";
  bool use_float = false;
  unsigned threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--resolution", config.resolution, "number of dyadic coordinates N");
    cmd->add_option("--depth", config.depth, "martingale depth M");
    cmd->add_option("--p", config.p, "exponent p as a rational, e.g. 1/4");
    cmd->add_option("--system", config.system, "paley or kaczmarz");
    cmd->add_option("--n-max", config.n_max, "largest order n");
    cmd->add_option("--A", config.A, "kernel lower-bound parameter A (resolution 2A)");
    cmd->add_option("--i-list", config.i_list, "indices i for the second counterexample")->delimiter(',');
    cmd->add_option("--n-list", config.n_list, "indices n for the first counterexample")->delimiter(',');
    cmd->add_flag("--exact", "exact rational arithmetic (default)");
    cmd->add_flag("--float", use_float, "float64 arithmetic");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", config.out, "report file");
    cmd->add_option("--seed", config.seed, "random seed");
    cmd->add_option("--threads", threads, "worker threads (results do not depend on it)");
  };

  auto* kernel = app.add_subcommand("kernel", "emit Dirichlet or Fejer kernel samples");
  add_common(kernel);
  kernel->add_option("--kind", config.kind, "dirichlet or fejer")->check(CLI::IsMember({"dirichlet", "fejer"}));
  kernel->add_option("--n", config.n, "kernel order");

  auto* verify = app.add_subcommand("verify", "exact verifications");
  verify->require_subcommand(1);
  std::vector<CLI::App*> leaves{kernel};
  for (const char* name : {"yano", "lemma2", "identities"}) {
    auto* s = verify->add_subcommand(name);
    add_common(s);
    leaves.push_back(s);
  }
  auto* counter = app.add_subcommand("counterexample", "build and audit a counterexample family");
  counter->require_subcommand(1);
  for (const char* name : {"t1", "t2"}) {
    auto* s = counter->add_subcommand(name);
    add_common(s);
    leaves.push_back(s);
  }
  auto* converge = app.add_subcommand("converge", "rate / error tables for Fejer means");
  add_common(converge);
  std::string family = "random";
  converge->add_option("--family", family, "random, t1 or t2")->check(CLI::IsMember({"random", "t1", "t2"}));
  leaves.push_back(converge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    for (auto* leaf : sub->get_subcommands()) config.command += " " + leaf->get_name();
  }
  if (config.command == "converge") config.command += " " + family;
  config.exact = !use_float;
  config.format = parse_format(format);
  if (threads) set_worker_threads(threads);

  try {
    return run(config, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace walshlab::cli
