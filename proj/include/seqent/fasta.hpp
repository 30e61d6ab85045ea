#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqent/ensemble.hpp"
#include "seqent/sequence.hpp"

namespace seqent {

class fasta_parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GapPolicy {
  split,  // non-ACGT runs break the record into segments
  error,  // any non-ACGT character rejects the file
};

AlphabetPtr dna_alphabet();       // {A, C, G, T}
Involution chargaff_involution(); // C<->G, A<->T

// One FASTA record, split into maximal runs of valid A/C/G/T symbols.
// Offsets are 1-based positions within the record's sequence characters,
// so segments plus their gaps reproduce the record layout.
struct FastaSegment {
  std::uint64_t offset;
  SymbolSequence seq;
};

struct FastaRecord {
  std::string id;
  std::uint64_t raw_length = 0;  // sequence characters including gaps
  std::vector<FastaSegment> segments;
};

// Case-folding, CRLF-normalizing parser. Under GapPolicy::split every
// character outside {A,C,G,T,a,c,g,t} starts a gap; under GapPolicy::error
// such a character is a parse error naming its line.
std::vector<FastaRecord> parse_fasta(std::istream& in,
                                     const std::string& origin,
                                     GapPolicy policy = GapPolicy::split);
std::vector<FastaRecord> parse_fasta_file(const std::string& path,
                                          GapPolicy policy = GapPolicy::split);

// Match-length entropy-production experiment over one record: realizations
// choose a segment (weighted by length) and a start uniform in its first
// half, then every grid window size m and both letter maps are evaluated
// from that same start. Windows that cannot be certified within their
// segment are censored.
struct ChargaffExperimentResult {
  std::string record_id;
  struct PerTheta {
    std::string theta_label;  // "id" or "chargaff"
    EnsembleStats stats;
  };
  std::vector<PerTheta> per_theta;
};

ChargaffExperimentResult chargaff_experiment(const FastaRecord& record,
                                             const std::vector<std::uint64_t>& m_grid,
                                             std::uint64_t realizations,
                                             std::uint64_t seed,
                                             bool with_id, bool with_chargaff,
                                             int threads = 0);

// CSV rows in the ensemble schema plus theta and record_id columns.
std::string chargaff_csv_header();
void append_chargaff_csv(std::string& out, const ChargaffExperimentResult& r);

}  // namespace seqent
