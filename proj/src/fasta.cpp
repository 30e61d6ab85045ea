#include "seqent/fasta.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "seqent/rng.hpp"

namespace seqent {

AlphabetPtr dna_alphabet() {
  static const AlphabetPtr alphabet = FiniteAlphabet::from_chars("ACGT");
  return alphabet;
}

Involution chargaff_involution() {
  return Involution::from_pairs(dna_alphabet(), {{"C", "G"}, {"A", "T"}});
}

namespace {

// A=0 C=1 G=2 T=3 per dna_alphabet order; -1 marks a gap character.
int dna_code(char c) {
  switch (c) {
    case 'A': case 'a': return 0;
    case 'C': case 'c': return 1;
    case 'G': case 'g': return 2;
    case 'T': case 't': return 3;
    default: return -1;
  }
}

}  // namespace

std::vector<FastaRecord> parse_fasta(std::istream& in,
                                     const std::string& origin,
                                     GapPolicy policy) {
  std::vector<FastaRecord> records;
  FastaRecord* current = nullptr;
  std::vector<symbol_t> run;
  std::uint64_t run_offset = 0;

  auto flush_run = [&]() {
    if (!run.empty()) {
      current->segments.push_back(
          {run_offset, SymbolSequence(dna_alphabet(), std::move(run))});
      run = {};
    }
  };
  auto close_record = [&]() {
    if (!current) return;
    flush_run();
    if (current->raw_length == 0)
      throw fasta_parse_error(origin + ": record '" + current->id +
                              "' has no sequence data");
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      close_record();
      std::istringstream hs(line.substr(1));
      std::string id;
      hs >> id;
      if (id.empty())
        throw fasta_parse_error(origin + ":" + std::to_string(lineno) +
                                ": malformed header (empty id)");
      records.push_back(FastaRecord{id, 0, {}});
      current = &records.back();
      continue;
    }
    if (!current)
      throw fasta_parse_error(origin + ":" + std::to_string(lineno) +
                              ": sequence data before the first '>' header");
    for (char c : line) {
      ++current->raw_length;
      int code = dna_code(c);
      if (code < 0) {
        if (policy == GapPolicy::error)
          throw fasta_parse_error(origin + ":" + std::to_string(lineno) +
                                  ": invalid character '" +
                                  std::string(1, c) + "'");
        flush_run();
        continue;
      }
      if (run.empty()) run_offset = current->raw_length;
      run.push_back(static_cast<symbol_t>(code));
    }
  }
  close_record();
  if (records.empty())
    throw fasta_parse_error(origin + ": no FASTA records found");
  return records;
}

std::vector<FastaRecord> parse_fasta_file(const std::string& path,
                                          GapPolicy policy) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FASTA file " + path);
  return parse_fasta(in, path, policy);
}

ChargaffExperimentResult chargaff_experiment(
    const FastaRecord& record, const std::vector<std::uint64_t>& m_grid,
    std::uint64_t realizations, std::uint64_t seed, bool with_id,
    bool with_chargaff, int threads) {
  if (record.segments.empty())
    throw std::invalid_argument("chargaff_experiment: record '" + record.id +
                                "' has no usable segments");
  std::uint64_t total = 0;
  for (const auto& seg : record.segments) total += seg.seq.size();

  ChargaffExperimentResult out;
  out.record_id = record.id;

  std::vector<std::pair<std::string, Involution>> thetas;
  if (with_id)
    thetas.emplace_back("id", Involution::identity(dna_alphabet()));
  if (with_chargaff) thetas.emplace_back("chargaff", chargaff_involution());
  if (thetas.empty())
    throw std::invalid_argument("chargaff_experiment: no involution selected");

  for (const auto& [label, theta] : thetas) {
    // same (seed, r) -> same segment and start for every theta, so the two
    // letter maps see identical windows
    auto evaluator = [&](std::uint64_t r) {
      SplitMix64 g(derive_stream_seed(seed, 2 * r));
      std::uint64_t t = g.below(total);
      const FastaSegment* seg = &record.segments.back();
      for (const auto& s : record.segments) {
        if (t < s.seq.size()) {
          seg = &s;
          break;
        }
        t -= s.seq.size();
      }
      std::size_t start = static_cast<std::size_t>(
          g.below(std::max<std::uint64_t>(1, seg->seq.size() / 2)));
      return batch_match_length_estimates(seg->seq.tail(start), m_grid,
                                          theta);
    };
    EnsembleStats stats = run_ensemble(EstimatorKind::ep_match, m_grid,
                                       realizations, threads, evaluator);
    out.per_theta.push_back({label, std::move(stats)});
  }
  return out;
}

std::string chargaff_csv_header() {
  const std::string extras[] = {"theta", "record_id"};
  return csv_header(extras);
}

void append_chargaff_csv(std::string& out,
                         const ChargaffExperimentResult& r) {
  for (const auto& pt : r.per_theta) {
    const std::string extras[] = {pt.theta_label, r.record_id};
    append_csv_rows(out, pt.stats, extras);
  }
}

}  // namespace seqent
