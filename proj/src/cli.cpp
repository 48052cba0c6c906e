#include "dsum/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "dsum/apps.hpp"
#include "dsum/io.hpp"
#include "dsum/verify.hpp"

namespace dsum::cli {

namespace {

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
void with_semigroup(const std::string& name, int level, F&& f) {
  if (name == NatSum::name) return f(NatSum{});
  if (name == MaxWeight::name) return f(MaxWeight{});
  if (name == MinPlus::name) return f(MinPlus{});
  if (name == CountWeightSemiring::name) return f(CountWeightSemiring{});
  if (name == FreeMultiset::name) return f(FreeMultiset{});
  if (name == WordSum::name) return f(WordSum{});
  if (name == WitnessMax::name) return f(WitnessMax{level});
  throw InvalidArgument("unknown semiring '" + name + "' (nat-sum, max, min-plus, count-weight, multiset, word-sum, witness-max)");
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

void require_sizes(std::int64_t n, int p, int q) {
  if (n < 1) throw InvalidArgument("--n must be at least 1");
  if (p < 0 || q < 0) throw InvalidArgument("--p and --q must be nonnegative");
}

// ------------------------------------------------------------------ build

struct BuildArgs {
  std::int64_t n = 0;
  int p = 0;
  int q = 0;
  std::string builder = "pq";
  std::string out;
  std::string dot;
  bool stats = false;
};

void run_build(const BuildArgs& a, std::ostream& out) {
  require_sizes(a.n, a.p, a.q);
  const auto c = build_named(a.builder, static_cast<std::uint64_t>(a.n), a.p, a.q);
  if (a.stats) {
    const auto counts = gate_counts(c);
    out << "builder=" << c.builder() << " n=" << a.n << " b=" << c.b() << " p=" << c.p() << " q=" << c.q() << "\n";
    out << "inputs=" << counts.inputs << " adds=" << counts.adds << " outputs=" << counts.outputs << "\n";
    if (a.builder == "pq") {
      const auto predicted = predicted_gate_count(c.b(), c.p(), c.q());
      out << "predicted inputs=" << predicted.inputs << " adds=" << predicted.adds << " outputs=" << predicted.outputs << "\n";
      if (counts.aliased_outputs != 0) out << "aliased_outputs=" << counts.aliased_outputs << "\n";
      if (counts.inputs != predicted.inputs || counts.accounted_adds() != predicted.adds || counts.outputs != predicted.outputs) {
        throw VerificationFailure("gate counts differ from the prediction");
      }
    }
  }
  if (!a.dot.empty()) write_text_file(a.dot, to_dot(c));
  if (!a.out.empty()) {
    write_text_file(a.out, serialize(c));
  } else if (!a.stats && a.dot.empty()) {
    out << serialize(c);
  }
}

// ------------------------------------------------------------------ eval

struct EvalArgs {
  std::string circuit;
  std::string input;
  std::string semiring;
  std::string out;
  bool direct = false;
  std::int64_t n = 0;
  int p = -1;
  int q = -1;
  unsigned threads = 1;
};

void run_eval(const EvalArgs& a, std::ostream& out) {
  std::optional<Circuit> circuit;
  std::uint64_t n = 0;
  int p = a.p;
  int q = a.q;
  if (a.direct) {
    if (!a.circuit.empty()) throw InvalidArgument("--direct evaluates without a circuit; drop --circuit");
    if (a.n < 1 || p < 0 || q < 0) throw InvalidArgument("--direct needs --n, --p and --q");
    n = static_cast<std::uint64_t>(a.n);
  } else {
    if (a.circuit.empty()) throw InvalidArgument("eval needs --circuit FILE or --direct");
    circuit = deserialize(read_text_file(a.circuit));
    n = a.n > 0 ? static_cast<std::uint64_t>(a.n) : std::uint64_t{1} << circuit->b();
    if (Universe(n).b() != circuit->b()) throw InvalidArgument("--n does not match the circuit's tree height");
    p = circuit->p();
    q = circuit->q();
  }
  const Universe u(n);
  const auto text = read_text_file(a.input);
  with_semigroup(a.semiring, u.b(), [&](const auto& s) {
    const auto g = parse_label_table(text, n, s);
    std::set<InputLabel> inputs;
    if (circuit) {
      for (const auto& gate : circuit->gates()) {
        if (const auto* in = std::get_if<InputGate>(&gate)) inputs.insert(in->label);
      }
    }
    for (const auto& [label, value] : g) {
      try {
        detail::check_label_key(u, p, q, label);
      } catch (const InvalidArgument& e) {
        throw FormatError(a.input + ": " + e.what());
      }
      if (circuit && !inputs.contains(label)) {
        throw FormatError(a.input + ": (" + format_subset(label.individualized) + " | " + format_subset(label.support) +
                          ") is not an input of the circuit");
      }
    }
    const auto h = circuit ? evaluate_intersection(*circuit, n, g, s) : intersection_sum(n, p, q, g, s, {Mode::direct, a.threads});
    emit(out, a.out, format_output_table(h, s));
  });
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::int64_t n = 0;
  int p = 0;
  int q = 0;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string builder = "pq";
};

void run_verify(const VerifyArgs& a, std::ostream& out) {
  require_sizes(a.n, a.p, a.q);
  if (a.trials < 1) throw InvalidArgument("--trials must be positive");
  const auto n = static_cast<std::uint64_t>(a.n);
  const Universe u(n);
  detail::check_oracle_budget(n, a.p, a.q);
  std::mt19937_64 rng(a.seed);
  const auto circuit = build_pq(u.b(), a.p, a.q);

  out << "verify n=" << n << " b=" << u.b() << " p=" << a.p << " q=" << a.q << " trials=" << a.trials << " seed=" << a.seed << "\n";
  bool ok = true;
  auto report = [&](const CheckResult& r, const char* what) {
    out << r.name << ": " << what << " " << r.passed << "/" << r.trials;
    if (!r.ok()) out << " (" << r.first_failure << ")";
    out << "\n";
    ok = ok && r.ok();
  };
  report(check_modes(circuit, n, a.p, a.q, NatSum{}, Samplers::nat, a.trials, rng), "circuit=direct=oracle");
  report(check_modes(circuit, n, a.p, a.q, MaxWeight{}, Samplers::real, a.trials, rng), "circuit=direct=oracle");
  report(check_modes(circuit, n, a.p, a.q, MinPlus{}, Samplers::real, a.trials, rng), "circuit=direct=oracle");
  report(check_modes(circuit, n, a.p, a.q, CountWeightSemiring{}, Samplers::count_weight, a.trials, rng), "circuit=direct=oracle");
  report(check_modes(circuit, n, a.p, a.q, FreeMultiset{}, Samplers::multiset, a.trials, rng), "circuit=direct=oracle");

  auto disjointness = [&](const Circuit& c) {
    const auto d = check_disjointness(c, n);
    out << "disjointness[" << c.builder() << "]: gates=" << d.gates << " repeated=" << d.bad_gates << " exact outputs "
        << d.exact_outputs << "/" << d.outputs << "\n";
    ok = ok && d.ok();
  };
  disjointness(circuit);
  if (a.builder != "pq") {
    report(check_builder(a.builder, n, a.p, a.q, a.trials, rng), "builder=oracle");
    disjointness(build_named(a.builder, n, a.p, a.q));
  }
  out << (ok ? "PASS" : "FAIL") << "\n";
  if (!ok) throw VerificationFailure("verification failed");
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  int max_b = 0;
  int p = 0;
  int q = 0;
  int yates_max_b = 5;
  std::string csv;
};

void run_bench(const BenchArgs& a, std::ostream& out) {
  if (a.max_b < 1 || a.max_b > kMaxLevel) throw InvalidArgument("--max-b must be in [1, 62]");
  if (a.p < 0 || a.q < 0) throw InvalidArgument("--p and --q must be nonnegative");
  std::ostringstream csv;
  csv << "b,p,q,builder,inputs,adds,outputs,predicted_adds,build_ms\n";
  bool ok = true;
  for (int b = 1; b <= a.max_b; ++b) {
    std::vector<std::string> builders{"pq"};
    if (b >= 2 && a.p == 1 && a.q == 1) builders.emplace_back("valiant");
    if (b >= 2 && a.p == 1 && a.q >= 1) builders.emplace_back("p1");
    if (b >= 2 && a.q == 1 && a.p >= 1) builders.emplace_back("q1");
    if (b <= a.yates_max_b) builders.emplace_back("yates");
    for (const auto& name : builders) {
      const auto start = std::chrono::steady_clock::now();
      const auto c = build_named(name, std::uint64_t{1} << b, a.p, a.q);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      const auto counts = gate_counts(c);
      csv << b << "," << a.p << "," << a.q << "," << name << "," << counts.inputs << "," << counts.accounted_adds() << ","
          << counts.outputs << ",";
      if (name == "pq") {
        const auto predicted = predicted_gate_count(b, a.p, a.q);
        csv << predicted.adds;
        ok = ok && predicted.adds == counts.accounted_adds() && predicted.inputs == counts.inputs;
      }
      csv << "," << std::fixed << std::setprecision(3) << ms << std::defaultfloat << "\n";
    }
  }
  if (!a.csv.empty()) write_text_file(a.csv, csv.str());
  out << csv.str();
  if (!ok) throw VerificationFailure("gate counts differ from the prediction");
}

// ------------------------------------------------------------------ apps

struct KPathArgs {
  std::string graph;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  int k = 0;
  bool directed = false;
  unsigned threads = 1;
};

void run_kpath(const KPathArgs& a, std::ostream& out) {
  const auto g = parse_graph(read_text_file(a.graph), a.directed);
  const auto r = kpath_count(g, a.s, a.t, a.k, {SumOptions{Mode::direct, a.threads}});
  if (r.count == 0) {
    out << "no path\n";
  } else {
    out << "count=" << r.count << " weight=" << format_real(r.weight) << "\n";
  }
}

struct PermanentArgs {
  std::string matrix;
  std::string semiring = "nat-sum";
  bool check = false;
};

void run_permanent(const PermanentArgs& a, std::ostream& out) {
  const auto text = read_text_file(a.matrix);
  with_semigroup(a.semiring, 0, [&](const auto& s) {
    using S = std::decay_t<decltype(s)>;
    if constexpr (Semiring<S>) {
      const auto m = parse_matrix(text, s);
      const auto value = permanent(m, s);
      out << s.format(value) << "\n";
      if (a.check) {
        const bool same = oracle_permanent(m, s) == value;
        out << (same ? "oracle: match" : "oracle: MISMATCH") << "\n";
        if (!same) throw VerificationFailure("permanent differs from the oracle");
      }
    } else {
      throw InvalidArgument("semiring '" + a.semiring + "' has no product");
    }
  });
}

struct FeatselArgs {
  std::string scores;
  int p = 0;
  int q = 0;
  std::int64_t n = 0;
  unsigned threads = 1;
};

void run_featsel(const FeatselArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  if (a.p < 0 || a.q < 0) throw InvalidArgument("--p and --q must be nonnegative");
  const auto scores =
      parse_scores(read_text_file(a.scores), a.n > 0 ? std::optional<std::uint64_t>(static_cast<std::uint64_t>(a.n)) : std::nullopt);
  const auto index = featsel_precompute(scores, a.p, a.q, {Mode::direct, a.threads});
  err << "precomputed " << index.best.size() << " answers with " << index.plus_operations << " plus operations\n";
  const WitnessMax s{Universe(scores.n).b()};
  const int level = Universe(scores.n).b();

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Subset excluded;
    Subset included = Subset::empty(level);
    try {
      const auto bar = line.find('|');
      excluded = parse_subset(line.substr(0, bar), level);
      if (bar != std::string::npos) included = parse_subset(line.substr(bar + 1), level);
    } catch (const FormatError& e) {
      throw FormatError("query line " + std::to_string(number) + ": " + e.what());
    }
    if (Universe(scores.n).has_phantom(excluded) || Universe(scores.n).has_phantom(included)) {
      throw FormatError("query line " + std::to_string(number) + ": feature out of range");
    }
    Adjoined<Witnessed> answer;
    if (included.empty()) {
      answer = featsel_query(index, excluded);
    } else {
      err << "warning: query line " << number << " forces features in; answered by brute force\n";
      answer = featsel_brute_force(scores, excluded, included);
    }
    out << format_adjoined(s, answer) << "\n";
  }
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disjoint and intersection summation over commutative semigroups", "dsum"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a summation circuit");
  build_cmd->add_option("--n", build.n, "Ground set size")->required();
  build_cmd->add_option("--p", build.p, "Bound on |X|")->required();
  build_cmd->add_option("--q", build.q, "Bound on |A|")->required();
  build_cmd->add_option("--builder", build.builder, "pq, valiant, p1, q1 or yates")->capture_default_str();
  build_cmd->add_option("--out", build.out, "Write the circuit to FILE");
  build_cmd->add_option("--dot", build.dot, "Write a Graphviz rendering to FILE");
  build_cmd->add_flag("--stats", build.stats, "Print gate counts");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a table of summands");
  eval_cmd->add_option("--circuit", eval.circuit, "Circuit file");
  eval_cmd->add_option("--input", eval.input, "Table 'X : value' or 'I | X : value'")->required();
  eval_cmd->add_option("--semiring", eval.semiring, "Value domain")->required();
  eval_cmd->add_option("--out", eval.out, "Write results to FILE");
  eval_cmd->add_flag("--direct", eval.direct, "Evaluate without building a circuit");
  eval_cmd->add_option("--n", eval.n, "Ground set size");
  eval_cmd->add_option("--p", eval.p, "Bound on |X| (direct mode)");
  eval_cmd->add_option("--q", eval.q, "Bound on |A| (direct mode)");
  eval_cmd->add_option("--threads", eval.threads, "Worker threads for direct mode")->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check every evaluation path on random tables");
  verify_cmd->add_option("--n", verify.n, "Ground set size")->required();
  verify_cmd->add_option("--p", verify.p, "Bound on |X|")->required();
  verify_cmd->add_option("--q", verify.q, "Bound on |A|")->required();
  verify_cmd->add_option("--trials", verify.trials, "Random tables per value domain")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Random seed")->capture_default_str();
  verify_cmd->add_option("--builder", verify.builder, "Also check this construction")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Gate counts and build times for b = 1..B");
  bench_cmd->add_option("--max-b", bench.max_b, "Largest tree height")->required();
  bench_cmd->add_option("--p", bench.p, "Bound on |X|")->required();
  bench_cmd->add_option("--q", bench.q, "Bound on |A|")->required();
  bench_cmd->add_option("--yates-max-b", bench.yates_max_b, "Largest tree height for the Yates baseline")->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "Also write the CSV to FILE");

  KPathArgs kpath;
  auto* kpath_cmd = app.add_subcommand("kpath", "Count heaviest simple k-edge paths");
  kpath_cmd->add_option("--graph", kpath.graph, "Graph file")->required();
  kpath_cmd->add_option("--s", kpath.s, "Start vertex")->required();
  kpath_cmd->add_option("--t", kpath.t, "End vertex")->required();
  kpath_cmd->add_option("--k", kpath.k, "Number of edges")->required();
  kpath_cmd->add_flag("--directed", kpath.directed, "Treat edges as arcs");
  kpath_cmd->add_option("--threads", kpath.threads, "Worker threads")->capture_default_str();

  PermanentArgs perm;
  auto* perm_cmd = app.add_subcommand("permanent", "Permanent of a k x n matrix");
  perm_cmd->add_option("--matrix", perm.matrix, "Matrix file")->required();
  perm_cmd->add_option("--semiring", perm.semiring, "Value domain")->capture_default_str();
  perm_cmd->add_flag("--check", perm.check, "Compare against exhaustive enumeration");

  FeatselArgs featsel;
  auto* featsel_cmd = app.add_subcommand("featsel", "Answer best-subset queries read from standard input");
  featsel_cmd->add_option("--scores", featsel.scores, "Scores file 'X : score'")->required();
  featsel_cmd->add_option("--p", featsel.p, "Largest candidate set")->required();
  featsel_cmd->add_option("--q", featsel.q, "Largest excluded set")->required();
  featsel_cmd->add_option("--n", featsel.n, "Number of features (default: inferred)");
  featsel_cmd->add_option("--threads", featsel.threads, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build_cmd) run_build(build, out);
    if (*eval_cmd) run_eval(eval, out);
    if (*verify_cmd) run_verify(verify, out);
    if (*bench_cmd) run_bench(bench, out);
    if (*kpath_cmd) run_kpath(kpath, out);
    if (*perm_cmd) run_permanent(perm, out);
    if (*featsel_cmd) run_featsel(featsel, in, out, err);
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const ScaleGuardError& e) {
    err << "error: " << e.what() << "\n";
    return kExitOverflow;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitOverflow;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace dsum::cli
