#pragma once

// Elements of the truncated groups G_p^(n): functions on binary strings of
// length n with values in F_p, stored as packed digit vectors of length 2^n.
//
// Index convention: the cylinder [tau] for tau = tau_1 ... tau_n sits at digit
// position sum tau_i 2^(n-i), so tau_1 is the most significant bit and
// restriction to a prefix is a contiguous slice.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bohrsets {

using Digit = std::uint32_t;

/// Largest scale an element may have (2^kMaxScale digits).
inline constexpr unsigned kMaxScale = 30;

bool is_prime(std::uint64_t n) noexcept;

/// A validated prime modulus below 2^31.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  std::uint32_t value() const noexcept { return value_; }

  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t value_;
};

/// A residue in [0, p).
class FieldValue {
 public:
  FieldValue(Prime p, std::uint64_t value);

  Digit value() const noexcept { return value_; }
  Prime prime() const noexcept { return p_; }

  friend FieldValue operator+(FieldValue a, FieldValue b);
  friend FieldValue operator-(FieldValue a, FieldValue b);
  friend FieldValue operator*(FieldValue a, FieldValue b);
  friend bool operator==(FieldValue, FieldValue) = default;

 private:
  Prime p_;
  Digit value_;
};

/// A binary prefix tau in Omega_m, stored as its index (tau_1 most significant).
struct Cylinder {
  unsigned length = 0;
  std::uint64_t index = 0;

  static Cylinder parse(std::string_view bits);
  std::string to_string() const;
};

class GroupRange;

/// An element of G_p^(scale). Values are immutable; all operations return new
/// elements. Equality compares the represented group members, so elements of
/// different scales are equal when one embeds onto the other.
class GroupElement {
 public:
  /// The identity of G_p^(scale).
  GroupElement(Prime p, unsigned scale);

  static GroupElement constant(Prime p, unsigned scale, FieldValue x);
  static GroupElement from_digits(Prime p, unsigned scale, std::span<const Digit> digits);
  /// Inverse of index(): base-p digits with position 0 most significant.
  static GroupElement from_index(Prime p, unsigned scale, std::uint64_t index);
  /// Parses "p,scale:digits", e.g. "2,2:0110". Primes above 36 use
  /// dot-separated decimal digits.
  static GroupElement parse(std::string_view text);

  Prime prime() const noexcept { return p_; }
  std::uint32_t modulus() const noexcept { return p_.value(); }
  unsigned scale() const noexcept { return scale_; }
  std::size_t size() const noexcept { return std::size_t{1} << scale_; }

  Digit operator[](std::size_t t) const noexcept {
    const std::size_t word = t / per_word_;
    const unsigned shift = static_cast<unsigned>(t % per_word_) * bits_;
    return static_cast<Digit>((words_[word] >> shift) & mask());
  }
  Digit digit(std::size_t t) const;
  std::vector<Digit> digits() const;

  /// Lexicographic rank among all p^(2^scale) elements.
  std::uint64_t index() const;

  /// Number of positions in [offset, offset + length) holding `value`.
  std::size_t count(std::size_t offset, std::size_t length, Digit value) const noexcept;

  /// True when the element is constant on every scale-n cylinder, i.e. it
  /// lies in G_p^(n).
  bool is_constant_on(unsigned n) const noexcept;
  bool is_zero() const noexcept;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const GroupElement& a, const GroupElement& b);

  friend GroupElement add(const GroupElement& a, const GroupElement& b);
  friend GroupElement neg(const GroupElement& a);
  friend GroupElement scalar_mul(FieldValue c, const GroupElement& a);
  friend GroupElement embed(const GroupElement& g, unsigned scale);
  friend GroupElement restrict(const GroupElement& g, Cylinder tau);
  friend GroupElement coarsen(const GroupElement& g, unsigned scale);

 private:
  friend class GroupRange;

  std::uint64_t mask() const noexcept { return bits_ == 64 ? ~0ULL : ((1ULL << bits_) - 1); }
  void set(std::size_t t, Digit v) noexcept;
  /// Advances to the lexicographic successor; returns false on wrap-around.
  bool increment() noexcept;

  Prime p_;
  unsigned scale_;
  unsigned bits_;
  unsigned per_word_;
  std::vector<std::uint64_t> words_;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement sub(const GroupElement& a, const GroupElement& b);
GroupElement scalar_mul(FieldValue c, const GroupElement& a);

/// Views g at the finer scale N >= g.scale(): each digit is repeated 2^(N-n) times.
GroupElement embed(const GroupElement& g, unsigned scale);
/// Inverse of embed; requires g.is_constant_on(scale).
GroupElement coarsen(const GroupElement& g, unsigned scale);
/// g|_tau, the element of scale n - |tau| with g|_tau(w) = g(tau w).
GroupElement restrict(const GroupElement& g, Cylinder tau);

/// |g^{-1}(A)|_n: the number of scale-n cylinders on which g takes a value in A.
std::size_t content_count(const GroupElement& g, std::span<const Digit> values);

inline GroupElement operator+(const GroupElement& a, const GroupElement& b) { return add(a, b); }
inline GroupElement operator-(const GroupElement& a, const GroupElement& b) { return sub(a, b); }
inline GroupElement operator-(const GroupElement& a) { return neg(a); }

}  // namespace bohrsets

template <>
struct std::hash<bohrsets::GroupElement> {
  std::size_t operator()(const bohrsets::GroupElement& g) const noexcept { return g.hash(); }
};
