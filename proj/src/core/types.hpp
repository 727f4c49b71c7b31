#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparseapprox {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

enum class Errc {
  bad_input,
  dimension_mismatch,
  not_square,
  rank_deficient,
  singular,
  bad_k,
  not_in_lattice,
  not_simplicial,
  not_spanning,
  no_witness,
  budget_exceeded,
  pigeonhole_violation,
  tau_search_failed,
  rank_retry_exhausted,
  not_prime,
  bad_l,
  parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Error(Errc code, const std::string& what, long long count)
      : std::runtime_error(what), code_(code), count_(count) {}

  Errc code() const { return code_; }
  std::optional<long long> count() const { return count_; }

 private:
  Errc code_;
  std::optional<long long> count_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Default enumeration guard shared by the exhaustive routines.
inline constexpr long long kDefaultBudget = 1'000'000;

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Floor division with arbitrary sign of a; requires b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

// Nearest integer, halves toward +infinity.
inline Int round_half_up(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Int int_from_string(const std::string& s);
Rat rat_from_string(const std::string& s);

}  // namespace sparseapprox
