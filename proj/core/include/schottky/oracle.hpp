#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schottky/mcg.hpp"
#include "schottky/numeric.hpp"
#include "schottky/pingpong.hpp"

namespace schottky::oracle {

/// 2n (2n - 1)^(k - 1): reduced words of length exactly k on n generators.
BigInt count_reduced_words(std::uint64_t n, std::uint64_t k);

struct Violation {
  std::string word;     // letters a, b, ... for generators, A, B, ... for inverses
  std::string product;  // the projective product, "1,0,0,1"
};

struct WordReport {
  std::uint64_t n_generators = 0;
  std::uint64_t N = 0;
  std::uint64_t max_word_length = 0;
  BigInt words_checked;
  bool complete = true;
  std::vector<Violation> violations;  // in enumeration order
  double wall_time = 0.0;             // seconds; not part of the serialized report
};

struct FreeCheckOptions {
  unsigned threads = 1;
  /// Stop after this many words; 0 means no limit.
  std::uint64_t word_budget = 0;
  /// Keep at most this many violations.
  std::size_t max_violations = 1000;
};

/// Multiplies out every reduced word of length 1 .. max_word_length in the
/// N-th powers of the generators and their inverses, depth first with letters
/// ordered a, A, b, B, ..., and records each word whose product is +-identity.
/// Any matrices are accepted; only N >= 1 and a nonempty list are required.
WordReport free_check(const std::vector<mcg::MappingClass>& generators, std::uint64_t N,
                      std::uint64_t max_word_length, const FreeCheckOptions& options = {});

/// Runs free_check with the certificate's N. Refuses paper-mode certificates
/// and N = 0 with invalid_input.
bool cross_validate(const pingpong::PingPongCertificate& cert, std::uint64_t max_word_length,
                    const FreeCheckOptions& options = {});

}  // namespace schottky::oracle
