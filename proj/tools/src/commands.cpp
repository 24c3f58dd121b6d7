#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <qdf/qdf.hpp>

#include "matrix_io.hpp"
#include "report.hpp"
#include "spec_io.hpp"

namespace qdf::cli {

namespace {

struct Options {
  std::string spec_path;
  std::string out_path;
  std::string format = "csv";
  bool no_timestamp = false;
  std::uint64_t seed = 0;
  std::optional<Index> n_start;
  std::optional<Index> n_end;
  std::optional<Index> n_step;
  std::optional<Index> n_geometric;
};

[[noreturn]] void invalid(const std::string& what) { throw SpecError(what); }

const OperatorSpec& need_operator(const SpecFile& spec) {
  if (!spec.op) invalid("this command needs an \"operator\" section");
  return *spec.op;
}

const ProjectionFamily& need_family(const SpecFile& spec) {
  if (!spec.family) invalid("this command needs a \"projection\" section");
  return *spec.family;
}

const Json& need(const Json& experiment, const char* key) {
  const auto it = experiment.find(key);
  if (it == experiment.end()) invalid(std::string("experiment: missing \"") + key + "\"");
  return *it;
}

double positive_number(const Json& j, const char* key) {
  if (!j.is_number() || !(j.get<double>() > 0.0)) invalid(std::string("experiment: \"") + key + "\" must be a positive number");
  return j.get<double>();
}

Index positive_integer(const Json& j, const char* key) {
  if (!j.is_number_integer() || j.get<Index>() < 1) invalid(std::string("experiment: \"") + key + "\" must be a positive integer");
  return j.get<Index>();
}

std::vector<Index> arithmetic_grid(Index start, Index end, Index step) {
  if (start < 1 || end < start || step < 1) invalid("grid needs 1 <= n_start <= n_end and n_step >= 1");
  std::vector<Index> ns;
  for (Index n = start; n <= end; n += step) ns.push_back(n);
  return ns;
}

std::vector<Index> geometric_grid(Index start, Index end, Index base) {
  if (start < 1 || end < start || base < 2) invalid("geometric grid needs 1 <= n_start <= n_end and base >= 2");
  std::vector<Index> ns;
  for (Index n = start; n <= end; n *= base) {
    ns.push_back(n);
    if (n > end / base) break;
  }
  return ns;
}

// Flags override the experiment's grid entirely.
std::vector<Index> resolve_grid(const Json& experiment, const Options& opt) {
  if (opt.n_start || opt.n_end || opt.n_step || opt.n_geometric) {
    if (!opt.n_start || !opt.n_end) invalid("--n-start and --n-end are both required for a grid");
    if (opt.n_step && opt.n_geometric) invalid("--n-step and --n-geometric are exclusive");
    return opt.n_geometric ? geometric_grid(*opt.n_start, *opt.n_end, *opt.n_geometric)
                           : arithmetic_grid(*opt.n_start, *opt.n_end, opt.n_step.value_or(1));
  }
  if (experiment.contains("ns")) {
    if (experiment.contains("n_start") || experiment.contains("n_end")) invalid("experiment: give either \"ns\" or a range");
    const Json& list = experiment["ns"];
    if (!list.is_array() || list.empty()) invalid("experiment: \"ns\" must be a nonempty list");
    std::vector<Index> ns;
    for (const auto& v : list) ns.push_back(positive_integer(v, "ns"));
    for (std::size_t i = 1; i < ns.size(); ++i) {
      if (ns[i] <= ns[i - 1]) invalid("experiment: \"ns\" must be strictly increasing");
    }
    return ns;
  }
  if (!experiment.contains("n_start") || !experiment.contains("n_end")) invalid("experiment: no n grid given");
  const Index start = positive_integer(experiment["n_start"], "n_start");
  const Index end = positive_integer(experiment["n_end"], "n_end");
  if (experiment.contains("n_step") && experiment.contains("n_geometric")) invalid("experiment: \"n_step\" and \"n_geometric\" are exclusive");
  if (experiment.contains("n_geometric")) return geometric_grid(start, end, positive_integer(experiment["n_geometric"], "n_geometric"));
  const Index step = experiment.contains("n_step") ? positive_integer(experiment["n_step"], "n_step") : 1;
  return arithmetic_grid(start, end, step);
}

Table norms_table(const std::vector<NormReport>& reports) {
  Table t{"norms", {"n", "rank", "u", "s1", "s2", "ratio1", "ratio2"}, {}};
  for (const auto& r : reports) t.rows.push_back({r.n, r.rank, r.u, r.s1, r.s2, r.ratio1, r.ratio2});
  return t;
}

ClassifyPolicy policy_from_json(const Json& experiment) {
  ClassifyPolicy policy;
  if (!experiment.contains("policy")) return policy;
  const Json& j = experiment["policy"];
  require_keys(j, {"zero_tol", "rel_tol", "slack", "tail_fraction", "min_samples"}, "experiment policy");
  if (j.contains("zero_tol")) policy.zero_tol = positive_number(j["zero_tol"], "zero_tol");
  if (j.contains("rel_tol")) policy.rel_tol = positive_number(j["rel_tol"], "rel_tol");
  if (j.contains("slack")) policy.slack = positive_number(j["slack"], "slack");
  if (j.contains("tail_fraction")) {
    policy.tail_fraction = positive_number(j["tail_fraction"], "tail_fraction");
    if (policy.tail_fraction >= 1.0) invalid("experiment policy: \"tail_fraction\" must be below 1");
  }
  if (j.contains("min_samples")) policy.min_samples = static_cast<std::size_t>(positive_integer(j["min_samples"], "min_samples"));
  return policy;
}

Report cmd_norms(const SpecFile& spec, const Options& opt) {
  require_keys(spec.experiment, {"ns", "n_start", "n_end", "n_step", "n_geometric"}, "experiment");
  const auto& op = need_operator(spec);
  const auto& family = need_family(spec);
  const auto ns = resolve_grid(spec.experiment, opt);
  return {{}, {norms_table(report_sequence(op, family, ns))}};
}

Report cmd_classify(const SpecFile& spec, const Options& opt) {
  require_keys(spec.experiment, {"ns", "n_start", "n_end", "n_step", "n_geometric", "policy"}, "experiment");
  const auto& op = need_operator(spec);
  const auto& family = need_family(spec);
  const auto ns = resolve_grid(spec.experiment, opt);
  const ClassifyPolicy policy = policy_from_json(spec.experiment);
  const auto reports = report_sequence(op, family, ns);

  Table verdicts{"verdicts",
                 {"series", "verdict", "limit", "tail_size", "head_max", "tail_min", "tail_max", "tail_mean"},
                 {}};
  const std::vector<std::pair<std::string, std::function<double(const NormReport&)>>> series{
      {"u", [](const NormReport& r) { return r.u; }},
      {"ratio1", [](const NormReport& r) { return r.ratio1; }},
      {"ratio2", [](const NormReport& r) { return r.ratio2; }},
  };
  for (const auto& [name, pick] : series) {
    std::vector<double> values;
    for (const auto& r : reports) values.push_back(pick(r));
    const Verdict v = classify(values, policy);
    verdicts.rows.push_back({name, std::string(verdict_name(v.kind)), v.limit ? Cell(*v.limit) : Cell(std::string()),
                             static_cast<Index>(v.evidence.tail_size), v.evidence.head_max, v.evidence.tail_min,
                             v.evidence.tail_max, v.evidence.tail_mean});
  }
  return {{}, {norms_table(reports), verdicts}};
}

std::vector<Index> prefix_boundaries(const ProjectionFamily& family, const std::vector<Index>& picked) {
  const bool prefix = family.kind() == FamilyKind::canonical ||
                      (family.kind() == FamilyKind::blocks && !family.selector());
  if (!prefix) invalid("halmos boundaries need a canonical or unselected blocks family");
  std::vector<Index> out;
  for (Index n : picked) out.push_back(family.rank(n));
  return out;
}

Report cmd_halmos(const SpecFile& spec, const Options&) {
  require_keys(spec.experiment, {"epsilon", "search_limit", "window"}, "experiment");
  const auto& op = need_operator(spec);
  const ProjectionFamily family = spec.family.value_or(ProjectionFamily::canonical());
  const double epsilon = positive_number(need(spec.experiment, "epsilon"), "epsilon");
  const Index limit = positive_integer(need(spec.experiment, "search_limit"), "search_limit");
  const Index window = positive_integer(need(spec.experiment, "window"), "window");
  (void)prefix_boundaries(family, {});

  const auto picked = select_subsequence(op, family, epsilon, limit);
  const auto boundaries = prefix_boundaries(family, picked);
  const Decomposition d = halmos_decompose(op, boundaries, window, epsilon);

  Table t{"subsequence", {"position", "n", "boundary", "commutator_u", "threshold"}, {}};
  for (std::size_t i = 0; i < picked.size(); ++i) {
    const double u = seminorms(capture_commutator(op, family, picked[i]).entries).u;
    const double threshold = std::ldexp(epsilon, -static_cast<int>(std::min<std::size_t>(i + 2, 4096)));
    t.rows.push_back({static_cast<Index>(i + 1), picked[i], boundaries[i], u, threshold});
  }
  std::string violations;
  for (const auto& v : d.violations) violations += (violations.empty() ? "" : "; ") + v;
  return {{{"window", std::to_string(window)},
           {"epsilon", format_double(epsilon)},
           {"k_norm", format_double(d.k_norm)},
           {"off_block_residual", format_double(d.off_block_residual)},
           {"reconstruction_residual", format_double(d.reconstruction_residual)},
           {"violations", violations.empty() ? "none" : violations}},
          {t}};
}

Report cmd_sparse(const SpecFile& spec, const Options& opt) {
  require_keys(spec.experiment,
               {"ns", "n_start", "n_end", "n_step", "n_geometric", "boundaries", "selector", "epsilon", "search_limit"},
               "experiment");
  const auto& op = need_operator(spec);
  const IndexSequence selector = selector_from_json(need(spec.experiment, "selector"));
  const Json& b = need(spec.experiment, "boundaries");
  const auto ns = resolve_grid(spec.experiment, opt);

  std::optional<BoundarySequence> boundaries;
  std::string source;
  if (b.is_string() && b.get<std::string>() == "unit") {
    boundaries = BoundarySequence::unit();
    source = "unit";
  } else if (b.is_string() && b.get<std::string>() == "halmos") {
    const double epsilon = positive_number(need(spec.experiment, "epsilon"), "epsilon");
    const Index limit = positive_integer(need(spec.experiment, "search_limit"), "search_limit");
    const ProjectionFamily base = spec.family.value_or(ProjectionFamily::canonical());
    (void)prefix_boundaries(base, {});
    boundaries = BoundarySequence::list(prefix_boundaries(base, select_subsequence(op, base, epsilon, limit)));
    source = "halmos";
  } else if (b.is_array()) {
    std::vector<Index> list;
    for (const auto& v : b) {
      if (!v.is_number_integer()) invalid("experiment: boundaries must be integers");
      list.push_back(v.get<Index>());
    }
    try {
      boundaries = BoundarySequence::list(std::move(list));
    } catch (const Error& e) {
      invalid(std::string("experiment boundaries: ") + e.what());
    }
    source = "list";
  } else {
    invalid("experiment: \"boundaries\" must be \"unit\", \"halmos\" or a list");
  }
  const ProjectionFamily family = sparse_family(*boundaries, selector);
  Report report{{{"boundaries", source}}, {norms_table(report_sequence(op, family, ns))}};
  if (boundaries->length()) report.metadata.push_back({"block_count", std::to_string(*boundaries->length())});
  return report;
}

Report cmd_berg(const SpecFile& spec, const Options& opt) {
  require_keys(spec.experiment, {"dim", "matrix_file", "epsilon", "order"}, "experiment");
  const double epsilon = positive_number(need(spec.experiment, "epsilon"), "epsilon");
  const bool from_file = spec.experiment.contains("matrix_file");
  if (from_file == spec.experiment.contains("dim")) invalid("experiment: give exactly one of \"dim\" and \"matrix_file\"");
  Eigen::MatrixXcd a;
  std::vector<std::pair<std::string, std::string>> meta;
  if (from_file) {
    const Json& path = spec.experiment["matrix_file"];
    if (!path.is_string()) invalid("experiment: \"matrix_file\" must be a string");
    std::filesystem::path file(path.get<std::string>());
    if (file.is_relative()) file = std::filesystem::path(opt.spec_path).parent_path() / file;
    a = read_matrix_file(file.string());
    meta.push_back({"matrix_file", path.get<std::string>()});
  } else {
    const Index dim = positive_integer(spec.experiment["dim"], "dim");
    a = random_hermitian(dim, opt.seed).dense();
    meta.push_back({"seed", std::to_string(opt.seed)});
  }
  std::vector<Index> order;
  if (spec.experiment.contains("order")) {
    for (const auto& v : spec.experiment["order"]) order.push_back(positive_integer(v, "order"));
  }
  const BergResult r = berg_sequence(a, order, epsilon);

  Table t{"steps", {"step", "block_rank", "rank", "commutator_u"}, {}};
  Index rank = 0;
  for (Index s = 0; s < r.steps(); ++s) {
    rank += r.block_ranks[static_cast<std::size_t>(s)];
    t.rows.push_back({s + 1, r.block_ranks[static_cast<std::size_t>(s)], rank, r.commutator_norms[static_cast<std::size_t>(s)]});
  }
  meta.push_back({"dim", std::to_string(r.dim)});
  meta.push_back({"epsilon", format_double(epsilon)});
  meta.push_back({"final_rank", std::to_string(r.final_rank())});
  meta.push_back({"perturbation_norm", format_double(r.perturbation_norm)});
  meta.push_back({"zero_rank_steps", std::to_string(r.zero_rank_steps.size())});
  return {meta, {t}};
}

Report cmd_szego(const SpecFile& spec, const Options& opt) {
  require_keys(spec.experiment, {"ns", "n_start", "n_end", "n_step", "n_geometric", "ps"}, "experiment");
  const auto& op = need_operator(spec);
  if (op.kind() != OperatorKind::toeplitz) invalid("szego needs a toeplitz operator");
  const auto ns = resolve_grid(spec.experiment, opt);
  const Json& ps_json = need(spec.experiment, "ps");
  if (!ps_json.is_array() || ps_json.empty()) invalid("experiment: \"ps\" must be a nonempty list");
  std::vector<unsigned> ps;
  for (const auto& v : ps_json) {
    if (!v.is_number_integer() || v.get<long>() < 0 || v.get<long>() > 64) invalid("experiment: moments must be integers in 0..64");
    ps.push_back(v.get<unsigned>());
  }
  try {
    (void)SymbolPolynomial::of(op);
  } catch (const Error& e) {
    invalid(e.what());
  }
  const SzegoComparison cmp = szego_compare(op, ns, ps);
  Table t{"szego", {"n", "p", "empirical", "reference", "gap"}, {}};
  for (const auto& row : cmp.rows) t.rows.push_back({row.n, static_cast<Index>(row.p), row.empirical, row.reference, row.gap});
  Report report{{}, {t}};
  for (const auto& [p, monotone] : cmp.monotone_gap) report.metadata.push_back({"monotone_gap_p" + std::to_string(p), monotone ? "true" : "false"});
  return report;
}

WeylElement element_from_json(const Json& j) {
  if (!j.is_string()) invalid("experiment: Weyl elements must be strings");
  try {
    return WeylElement::parse(j.get<std::string>());
  } catch (const Error& e) {
    invalid(e.what());
  }
}

Report cmd_weyl_amenability(const SpecFile& spec, const Options&) {
  require_keys(spec.experiment, {"elements", "epsilon"}, "experiment");
  const Json& list = need(spec.experiment, "elements");
  if (!list.is_array() || list.empty()) invalid("experiment: \"elements\" must be a nonempty list");
  std::vector<WeylElement> elements;
  for (const auto& v : list) elements.push_back(element_from_json(v));
  const Json& eps = need(spec.experiment, "epsilon");
  mpq_class epsilon;
  try {
    epsilon = eps.is_string() ? parse_rational(eps.get<std::string>()) : rational_from_double(positive_number(eps, "epsilon"));
  } catch (const Error& e) {
    invalid(std::string("experiment epsilon: ") + e.what());
  }
  if (sgn(epsilon) <= 0) invalid("experiment: \"epsilon\" must be positive");

  const AmenabilityWitness w = amenability_witness(elements, epsilon);
  const mpq_class limit = 1 + epsilon;
  Table t{"witness", {"element", "n", "dim_v", "dim_sum", "ratio", "within"}, {}};
  for (const auto& row : w.rows) {
    const mpq_class& r = row.ratio;
    t.rows.push_back({row.element.to_string(), static_cast<Index>(w.n), w.level_dimension, row.sum_dimension,
                      r.get_num().get_str() + "/" + r.get_den().get_str(), r <= limit});
  }
  return {{{"epsilon", epsilon.get_str()},
           {"max_degree", std::to_string(w.max_degree)},
           {"search_bound", std::to_string(w.search_bound)},
           {"witness_n", std::to_string(w.n)},
           {"certified", w.certified ? "true" : "false"}},
          {t}};
}

Report cmd_weyl_represent(const SpecFile& spec, const Options&) {
  require_keys(spec.experiment, {"element", "dim"}, "experiment");
  const WeylElement x = element_from_json(need(spec.experiment, "element"));
  const Index dim = positive_integer(need(spec.experiment, "dim"), "dim");
  const Window w = represent(x, dim);
  Table t{"window", {"i", "j", "re", "im"}, {}};
  std::vector<WindowEntry> entries = w.entries();
  std::sort(entries.begin(), entries.end(),
            [](const WindowEntry& a, const WindowEntry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  for (const auto& e : entries) t.rows.push_back({e.row, e.col, e.value.real(), e.value.imag()});
  return {{{"element", x.to_string()}, {"dim", std::to_string(dim)}, {"degree", std::to_string(x.degree())}}, {t}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

using Command = std::function<Report(const SpecFile&, const Options&)>;

const std::vector<std::pair<std::string, std::pair<std::string, Command>>>& commands() {
  static const std::vector<std::pair<std::string, std::pair<std::string, Command>>> table{
      {"norms", {"Commutator seminorms and Foelner ratios over an n grid", cmd_norms}},
      {"classify", {"Seminorm sequences with convergence verdicts", cmd_classify}},
      {"halmos", {"Greedy subsequence and block-diagonal plus compact split", cmd_halmos}},
      {"sparse", {"Foelner ratios along a sparse block family", cmd_sparse}},
      {"berg", {"Quasidiagonalizing projections of a Hermitian matrix", cmd_berg}},
      {"szego", {"Eigenvalue moments against symbol moments", cmd_szego}},
      {"weyl-amenability", {"Exact Foelner subspace witness in the Weyl algebra", cmd_weyl_amenability}},
      {"weyl-represent", {"Matrix of a Weyl element in the Hermite basis", cmd_weyl_represent}},
  };
  return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdf: quasidiagonal and Foelner approximation experiments", "qdf"};
  app.set_version_flag("--version", std::string("qdf ") + QDF_VERSION);
  app.require_subcommand(1);
  Options opt;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--spec", opt.spec_path, "JSON spec file")->required();
    sub->add_option("--out", opt.out_path, "Report file (default: standard output)");
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-timestamp", opt.no_timestamp, "Omit the timestamp for byte-identical output");
    sub->add_option("--seed", opt.seed, "Seed for random Hermitian input");
    sub->add_option("--n-start", opt.n_start, "First n of the grid");
    sub->add_option("--n-end", opt.n_end, "Last n of the grid");
    sub->add_option("--n-step", opt.n_step, "Arithmetic grid step");
    sub->add_option("--n-geometric", opt.n_geometric, "Geometric grid ratio");
    subs[name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  std::string name;
  Command command;
  for (const auto& [n, entry] : commands()) {
    if (subs[n]->parsed()) {
      name = n;
      command = entry.second;
    }
  }

  std::string text;
  try {
    const SpecFile spec = load_spec_file(opt.spec_path);
    Report report = command(spec, opt);
    std::vector<std::pair<std::string, std::string>> header{
        {"tool", std::string("qdf ") + QDF_VERSION}, {"command", name}, {"spec_hash", spec_hash(spec)}};
    if (!opt.no_timestamp) header.push_back({"timestamp", utc_timestamp()});
    report.metadata.insert(report.metadata.begin(), header.begin(), header.end());
    text = render(report, opt.format == "json" ? Format::json : Format::csv);
  } catch (const SpecError& e) {
    err << "InvalidSpec: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    return kExitComputation;
  }

  if (opt.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file || !(file << text)) {
    err << "IOError: cannot write \"" << opt.out_path << "\"\n";
    return kExitComputation;
  }
  return kExitOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace qdf::cli
