#include "schottky/oracle.hpp"

#include <chrono>
#include <limits>

#include "schottky/errors.hpp"

namespace schottky::oracle {

BigInt count_reduced_words(std::uint64_t n, std::uint64_t k) {
  if (n < 1 || k < 1) fail(ErrorKind::invalid_input, "word count needs n >= 1 and k >= 1");
  BigInt out = 2 * BigInt(n);
  for (std::uint64_t i = 1; i < k; ++i) out *= 2 * BigInt(n) - 1;
  return out;
}

namespace {

struct Subtree {
  BigInt words;
  std::vector<Violation> violations;
  bool complete = true;
};

class Walker {
 public:
  Walker(const std::vector<mcg::MappingClass>& letters, std::uint64_t max_len,
         std::uint64_t budget, std::size_t max_violations)
      : letters_(letters), max_len_(max_len), budget_(budget), max_violations_(max_violations) {}

  Subtree run(std::size_t first) {
    out_ = Subtree{};
    word_.assign(1, first);
    visit(letters_[first]);
    return std::move(out_);
  }

 private:
  void visit(const mcg::MappingClass& product) {
    if (budget_ != 0 && out_.words >= budget_) {
      out_.complete = false;
      return;
    }
    out_.words += 1;
    if (product.is_identity()) {
      if (out_.violations.size() < max_violations_) {
        out_.violations.push_back({spell(), mcg::to_string(product)});
      }
    }
    if (word_.size() == max_len_) return;
    const std::size_t last = word_.back();
    for (std::size_t next = 0; next < letters_.size(); ++next) {
      if (next == (last ^ 1U)) continue;
      word_.push_back(next);
      visit(product * letters_[next]);
      word_.pop_back();
    }
  }

  std::string spell() const {
    std::string s;
    for (std::size_t l : word_) {
      const char base = (l & 1U) ? 'A' : 'a';
      s += static_cast<char>(base + static_cast<char>(l / 2));
    }
    return s;
  }

  const std::vector<mcg::MappingClass>& letters_;
  std::uint64_t max_len_;
  std::uint64_t budget_;
  std::size_t max_violations_;
  std::vector<std::size_t> word_;
  Subtree out_;
};

}  // namespace

WordReport free_check(const std::vector<mcg::MappingClass>& generators, std::uint64_t N,
                      std::uint64_t max_word_length, const FreeCheckOptions& options) {
  if (generators.empty()) fail(ErrorKind::invalid_input, "free_check needs generators");
  if (generators.size() > 26) fail(ErrorKind::invalid_input, "at most 26 generators");
  if (N < 1) fail(ErrorKind::invalid_input, "N must be at least 1");
  const auto started = std::chrono::steady_clock::now();

  // Each power is computed once; words then cost one product per letter.
  std::vector<mcg::MappingClass> letters;
  for (const auto& g : generators) {
    const mcg::MappingClass p = g.pow(N);
    letters.push_back(p);
    letters.push_back(p.inverse());
  }

  WordReport report;
  report.n_generators = generators.size();
  report.N = N;
  report.max_word_length = max_word_length;
  report.words_checked = 0;
  if (max_word_length == 0) return report;

  std::vector<Subtree> parts(letters.size());
  const unsigned threads = options.word_budget != 0 ? 1U : options.threads;
  const std::uint64_t budget_left = options.word_budget;
  if (threads <= 1) {
    BigInt used = 0;
    for (std::size_t first = 0; first < letters.size(); ++first) {
      const std::uint64_t remaining =
          budget_left == 0 ? 0 : budget_left - used.convert_to<std::uint64_t>();
      if (budget_left != 0 && remaining == 0) {
        parts[first].complete = false;
        continue;
      }
      Walker walker(letters, max_word_length, remaining, options.max_violations);
      parts[first] = walker.run(first);
      used += parts[first].words;
    }
  } else {
    parallel_for(letters.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t first = begin; first < end; ++first) {
        Walker walker(letters, max_word_length, 0, options.max_violations);
        parts[first] = walker.run(first);
      }
    });
  }
  for (auto& part : parts) {
    report.words_checked += part.words;
    report.complete = report.complete && part.complete;
    for (auto& v : part.violations) {
      if (report.violations.size() < options.max_violations) report.violations.push_back(std::move(v));
    }
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

bool cross_validate(const pingpong::PingPongCertificate& cert, std::uint64_t max_word_length,
                    const FreeCheckOptions& options) {
  if (cert.mode != pingpong::Mode::certified_search) {
    fail(ErrorKind::invalid_input,
         "paper-mode certificates carry an N far too large to exponentiate; use a certified one");
  }
  if (cert.N < 1) fail(ErrorKind::invalid_input, "certificate has N = " + cert.N.str());
  if (cert.N > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorKind::invalid_input, "certificate N = " + cert.N.str() + " is too large");
  }
  const WordReport report =
      free_check(cert.generators, cert.N.convert_to<std::uint64_t>(), max_word_length, options);
  return report.violations.empty() && report.complete;
}

}  // namespace schottky::oracle
