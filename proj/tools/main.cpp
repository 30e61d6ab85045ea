// seqent: entropy, cross-entropy and entropy-production estimation on
// finite-alphabet sequences through recurrence times, waiting times and
// match lengths, with exact Markov/PMP oracles for validation.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqent/ensemble.hpp"
#include "seqent/fasta.hpp"
#include "seqent/model_io.hpp"
#include "seqent/version.hpp"

using json = nlohmann::ordered_json;
using namespace seqent;

namespace {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_readable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw io_error("write to " + path + " failed");
}

// Sequence files hold alphabet tokens; '#' comment lines and whitespace are
// ignored.
SymbolSequence read_sequence(const std::string& path, AlphabetPtr alphabet) {
  std::string raw = read_stream_or_file(path);
  std::string chars;
  chars.reserve(raw.size());
  bool comment = false;
  for (char c : raw) {
    if (c == '\n') {
      comment = false;
      continue;
    }
    if (comment || c == '\r' || c == ' ' || c == '\t') continue;
    if (c == '#') {
      comment = true;
      continue;
    }
    chars.push_back(c);
  }
  return encode_text(chars, std::move(alphabet));
}

Involution parse_involution(const std::string& spec, AlphabetPtr alphabet) {
  if (spec.empty() || spec == "id") return Involution::identity(alphabet);
  if (spec == "chargaff") {
    require_same_alphabet(*alphabet, *dna_alphabet(), "--involution chargaff");
    return chargaff_involution();
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
      throw std::invalid_argument("bad involution pair '" + item +
                                  "' (expected A:B)");
    pairs.emplace_back(item.substr(0, colon), item.substr(colon + 1));
  }
  return Involution::from_pairs(std::move(alphabet), pairs);
}

std::uint64_t parse_grid_value(const std::string& tok) {
  std::size_t used = 0;
  double v = std::stod(tok, &used);
  if (used != tok.size() || !(v >= 1) || v != std::floor(v) || v > 1e15)
    throw std::invalid_argument("bad grid value '" + tok + "'");
  return static_cast<std::uint64_t>(v);
}

// "8..14" (step 1), "100,1000,10000", or "decades:100..1000000".
std::vector<std::uint64_t> parse_grid(const std::string& spec) {
  std::vector<std::uint64_t> grid;
  std::string body = spec;
  bool decades = false;
  if (body.rfind("decades:", 0) == 0) {
    decades = true;
    body = body.substr(8);
  }
  auto dots = body.find("..");
  if (dots != std::string::npos) {
    std::uint64_t lo = parse_grid_value(body.substr(0, dots));
    std::uint64_t hi = parse_grid_value(body.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("grid range is empty");
    if (decades) {
      for (std::uint64_t v = lo; v <= hi; v *= 10) grid.push_back(v);
    } else {
      if (hi - lo > 100000)
        throw std::invalid_argument("grid range too large; use decades:");
      for (std::uint64_t v = lo; v <= hi; ++v) grid.push_back(v);
    }
    return grid;
  }
  std::istringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) grid.push_back(parse_grid_value(tok));
  if (grid.empty()) throw std::invalid_argument("empty grid spec");
  return grid;
}

std::string header_comment(const json& config) {
  std::string out = "# seqent ";
  out += kVersion;
  out += "\n# config ";
  out += config.dump();
  out += "\n";
  return out;
}

json stats_rows_json(const EnsembleStats& stats,
                     const std::vector<std::pair<std::string, std::string>>&
                         extras = {}) {
  json rows = json::array();
  for (const auto& pt : stats.points) {
    json row;
    row["grid"] = pt.grid;
    row["kind"] = to_string(stats.kind);
    row["count"] = pt.count;
    row["censored"] = pt.censored;
    row["mean"] = pt.mean;  // NaN serializes as null
    row["sem"] = pt.sem;
    for (const auto& [k, v] : extras) row[k] = v;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_json_document(const json& config, json rows) {
  json doc;
  doc["tool"] = "seqent";
  doc["version"] = kVersion;
  doc["config"] = config;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

struct CommonOutput {
  std::string format = "csv";
  std::string output = "-";
};

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string model_path;
  std::uint64_t length = 0;
  std::uint64_t seed = 0;
  std::string output = "-";
};

int run_simulate(const SimulateArgs& a) {
  require_readable(a.model_path);
  AnySource model = load_model(a.model_path);
  SymbolSequence seq =
      sample_any(model, static_cast<std::size_t>(a.length), a.seed);
  json config = {{"cmd", "simulate"},
                 {"model", a.model_path},
                 {"length", a.length},
                 {"seed", a.seed}};
  std::string out = header_comment(config);
  out += decode_text(seq);
  out += "\n";
  write_output(a.output, out);
  return 0;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string kind = "ep-recurrence";
  std::string input;
  std::string input_y;
  std::string alphabet = "01";
  std::string model_path;
  std::string model_y_path;
  std::uint64_t length = 0;
  std::string grid_spec;
  std::uint64_t realizations = 1;
  std::uint64_t seed = 0;
  std::string involution = "id";
  int threads = 0;
  CommonOutput out;
};

int run_estimate(const EstimateArgs& a) {
  EstimatorKind kind = estimator_kind_from(a.kind);
  EnsembleOptions opt;
  opt.grid = parse_grid(a.grid_spec);
  opt.realizations = a.realizations;
  opt.seed = a.seed;
  opt.threads = a.threads;

  bool model_mode = !a.model_path.empty();
  if (model_mode == !a.input.empty())
    throw std::invalid_argument(
        "estimate: pass exactly one of --model or --input");

  EnsembleStats stats;
  json config = {{"cmd", "estimate"},
                 {"kind", a.kind},
                 {"grid", opt.grid},
                 {"realizations", a.realizations},
                 {"seed", a.seed},
                 {"involution", a.involution}};
  if (model_mode) {
    if (a.length == 0)
      throw std::invalid_argument("estimate: --length required with --model");
    require_readable(a.model_path);
    AnySource source = load_model(a.model_path);
    std::optional<AnySource> source_y;
    if (!a.model_y_path.empty()) {
      require_readable(a.model_y_path);
      source_y = load_model(a.model_y_path);
    }
    auto alphabet = std::visit(
        [](const auto& m) { return m.alphabet_ptr(); }, source);
    Involution theta = parse_involution(a.involution, alphabet);
    stats = ensemble_from_model(source, source_y,
                                static_cast<std::size_t>(a.length), kind,
                                theta, opt);
    config["model"] = a.model_path;
    if (!a.model_y_path.empty()) config["model_y"] = a.model_y_path;
    config["length"] = a.length;
  } else {
    auto alphabet = FiniteAlphabet::from_chars(a.alphabet);
    SymbolSequence x = read_sequence(a.input, alphabet);
    config["input"] = a.input;
    config["alphabet"] = a.alphabet;
    if (kind == EstimatorKind::cross_waiting) {
      if (a.input_y.empty())
        throw std::invalid_argument(
            "estimate: cross-waiting needs --input-y");
      SymbolSequence y = read_sequence(a.input_y, alphabet);
      config["input_y"] = a.input_y;
      stats = ensemble_from_sequence_pair(x, y, opt);
    } else {
      Involution theta = parse_involution(a.involution, alphabet);
      stats = ensemble_from_sequence(x, kind, theta, opt);
    }
  }

  std::string rendered;
  if (a.out.format == "json") {
    rendered = render_json_document(config, stats_rows_json(stats));
  } else {
    rendered = header_comment(config);
    rendered += csv_header({});
    append_csv_rows(rendered, stats, {});
  }
  write_output(a.out.output, rendered);
  return 0;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string model_path;
  std::string involution = "id";
  std::string output = "-";
};

int run_oracle(const OracleArgs& a) {
  require_readable(a.model_path);
  AnySource model = load_model(a.model_path);
  json config = {{"cmd", "oracle"},
                 {"model", a.model_path},
                 {"involution", a.involution}};
  std::string out = header_comment(config);
  if (std::holds_alternative<MarkovModel>(model)) {
    const MarkovModel& m = std::get<MarkovModel>(model);
    Involution theta = parse_involution(a.involution, m.alphabet_ptr());
    ChainStructure st = analyze_chain(m.transitions());
    out += "kind markov\n";
    out += "states " + std::to_string(m.size()) + "\n";
    out += std::string("irreducible ") + (st.irreducible ? "true" : "false") +
           "\n";
    out += std::string("aperiodic ") + (st.aperiodic ? "true" : "false") +
           "\n";
    out += "period " + std::to_string(st.period) + "\n";
    out += "entropy_rate " + format_sig12(entropy_rate(m)) + "\n";
    double ep = entropy_production(m, theta);
    out += "entropy_production " + format_sig12(ep) + "\n";
    if (m.full_support()) {
      out += "cross_entropy_reversal " +
             format_sig12(cross_entropy(m, reversed_model(m, theta))) + "\n";
      out += "psi_star_zero_bound " + format_sig12(psi_star_zero_bound(m)) +
             "\n";
    } else {
      out += "cross_entropy_reversal inf\n";
      out += "psi_star_zero_bound unavailable (min pi = 0)\n";
    }
    if (std::isinf(ep))
      out += "note entropy production infinite: the reversed measure does "
             "not dominate the chain\n";
  } else {
    const PmpModel& m = std::get<PmpModel>(model);
    Mat P(m.hidden_dim(), m.hidden_dim(), 0.0);
    for (std::size_t a2 = 0; a2 < m.letters(); ++a2)
      for (std::size_t i = 0; i < m.hidden_dim(); ++i)
        for (std::size_t j = 0; j < m.hidden_dim(); ++j)
          P.at(i, j) += m.letter_matrix(a2).at(i, j);
    ChainStructure st = analyze_chain(P);
    out += "kind pmp\n";
    out += "letters " + std::to_string(m.letters()) + "\n";
    out += "hidden_dim " + std::to_string(m.hidden_dim()) + "\n";
    out += std::string("irreducible ") + (st.irreducible ? "true" : "false") +
           "\n";
    out += std::string("aperiodic ") + (st.aperiodic ? "true" : "false") +
           "\n";
    out += "psi_star_zero_bound " + format_sig12(psi_star_zero_bound(m)) +
           "\n";
    out += "note analytic entropy rate and entropy production have no "
           "closed form for hidden sources; use the estimators\n";
  }
  write_output(a.output, out);
  return 0;
}

// ---------------------------------------------------------------------------
// dna
// ---------------------------------------------------------------------------

struct DnaArgs {
  std::string fasta_path;
  std::string grid_spec;
  std::uint64_t realizations = 1000;
  std::uint64_t seed = 0;
  std::string involution = "both";
  std::string gap_policy = "split";
  std::string record_filter;
  int threads = 0;
  CommonOutput out;
};

int run_dna(const DnaArgs& a) {
  GapPolicy policy =
      a.gap_policy == "error" ? GapPolicy::error : GapPolicy::split;
  require_readable(a.fasta_path);
  auto records = parse_fasta_file(a.fasta_path, policy);
  bool with_id = a.involution == "both" || a.involution == "id";
  bool with_ch = a.involution == "both" || a.involution == "chargaff";
  if (!with_id && !with_ch)
    throw std::invalid_argument("dna: --involution must be both|id|chargaff");

  std::vector<const FastaRecord*> selected;
  for (const auto& r : records)
    if (a.record_filter.empty() || r.id == a.record_filter)
      selected.push_back(&r);
  if (selected.empty())
    throw std::invalid_argument("dna: no record matches '" + a.record_filter +
                                "'");

  std::vector<std::uint64_t> grid;
  if (!a.grid_spec.empty()) {
    grid = parse_grid(a.grid_spec);
  } else {
    // default: decades 10^2..10^8, capped by the longest segment
    std::uint64_t longest = 0;
    for (const auto* r : selected)
      for (const auto& seg : r->segments)
        longest = std::max<std::uint64_t>(longest, seg.seq.size());
    for (std::uint64_t m = 100; m <= 100000000ull; m *= 10)
      if (m <= longest || m == 100) grid.push_back(m);
  }

  json config = {{"cmd", "dna"},          {"fasta", a.fasta_path},
                 {"grid", grid},          {"realizations", a.realizations},
                 {"seed", a.seed},        {"involution", a.involution},
                 {"gap_policy", a.gap_policy}};
  if (!a.record_filter.empty()) config["record"] = a.record_filter;

  std::string csv;
  json rows = json::array();
  for (const auto* rec : selected) {
    auto result = chargaff_experiment(*rec, grid, a.realizations, a.seed,
                                      with_id, with_ch, a.threads);
    append_chargaff_csv(csv, result);
    for (const auto& pt : result.per_theta) {
      json part = stats_rows_json(
          pt.stats,
          {{"theta", pt.theta_label}, {"record_id", result.record_id}});
      for (auto& row : part) rows.push_back(std::move(row));
    }
  }

  std::string rendered;
  if (a.out.format == "json") {
    rendered = render_json_document(config, std::move(rows));
  } else {
    rendered = header_comment(config);
    rendered += chargaff_csv_header();
    rendered += csv;
  }
  write_output(a.out.output, rendered);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy and entropy-production estimators on symbol "
               "sequences (recurrence times, waiting times, match lengths)"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate",
                                   "sample a sequence from a model file");
  c_sim->add_option("--model", sim.model_path, "model file")->required();
  c_sim->add_option("--length", sim.length, "number of symbols")->required();
  c_sim->add_option("--seed", sim.seed, "RNG seed");
  c_sim->add_option("--output", sim.output, "output path or -");

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate",
                                   "run an estimator over a grid");
  c_est->add_option("--kind", est.kind,
                    "ep-recurrence|entropy-recurrence|cross-waiting|ep-match");
  c_est->add_option("--input", est.input, "sequence file or - for stdin");
  c_est->add_option("--input-y", est.input_y,
                    "second sequence (cross-waiting)");
  c_est->add_option("--alphabet", est.alphabet,
                    "alphabet tokens for text input, e.g. 01 or ACGT");
  c_est->add_option("--model", est.model_path, "sample from this model");
  c_est->add_option("--model-y", est.model_y_path,
                    "model for the scanned sequence (cross-waiting)");
  c_est->add_option("--length", est.length, "sample length in model mode");
  c_est->add_option("--grid", est.grid_spec,
                    "n or m values: 8..14, 2,4,8 or decades:100..1000000")
      ->required();
  c_est->add_option("--realizations", est.realizations, "ensemble size");
  c_est->add_option("--seed", est.seed, "base RNG seed");
  c_est->add_option("--involution", est.involution,
                    "id, chargaff or pair list C:G,A:T");
  c_est->add_option("--threads", est.threads, "worker count (0 = default)");
  c_est->add_option("--format", est.out.format, "csv|json");
  c_est->add_option("--output", est.out.output, "output path or -");

  OracleArgs ora;
  auto* c_ora = app.add_subcommand("oracle",
                                   "analytic quantities of a model file");
  c_ora->add_option("--model", ora.model_path, "model file")->required();
  c_ora->add_option("--involution", ora.involution,
                    "id, chargaff or pair list");
  c_ora->add_option("--output", ora.output, "output path or -");

  DnaArgs dna;
  auto* c_dna = app.add_subcommand("dna",
                                   "Chargaff entropy-production experiment "
                                   "on a FASTA file");
  c_dna->add_option("--fasta", dna.fasta_path, "FASTA path")->required();
  c_dna->add_option("--grid", dna.grid_spec,
                    "window sizes (default decades 100.. capped by data)");
  c_dna->add_option("--realizations", dna.realizations, "windows per point");
  c_dna->add_option("--seed", dna.seed, "base RNG seed");
  c_dna->add_option("--involution", dna.involution, "both|id|chargaff");
  c_dna->add_option("--gap-policy", dna.gap_policy, "split|error");
  c_dna->add_option("--record", dna.record_filter,
                    "restrict to one record id");
  c_dna->add_option("--threads", dna.threads, "worker count (0 = default)");
  c_dna->add_option("--format", dna.out.format, "csv|json");
  c_dna->add_option("--output", dna.out.output, "output path or -");

  try {
    app.parse(argc, argv);
    if (*c_sim) return run_simulate(sim);
    if (*c_est) return run_estimate(est);
    if (*c_ora) return run_oracle(ora);
    if (*c_dna) return run_dna(dna);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const io_error& e) {
    std::cerr << "seqent: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "seqent: " << e.what() << "\n";
    return 2;
  }
}
