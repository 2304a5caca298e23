#include "bohrsets/field_group.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <stdexcept>

namespace bohrsets {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t value) {
  if (value >= (1ULL << 31) || !is_prime(value)) {
    throw std::invalid_argument("not a supported prime: " + std::to_string(value));
  }
  value_ = static_cast<std::uint32_t>(value);
}

FieldValue::FieldValue(Prime p, std::uint64_t value) : p_(p) {
  if (value >= p.value()) {
    throw std::invalid_argument("field value " + std::to_string(value) + " not below p = " +
                                std::to_string(p.value()));
  }
  value_ = static_cast<Digit>(value);
}

namespace {

void require_same_prime(Prime a, Prime b) {
  if (a != b) throw std::invalid_argument("mismatched primes");
}

}  // namespace

FieldValue operator+(FieldValue a, FieldValue b) {
  require_same_prime(a.p_, b.p_);
  const std::uint64_t p = a.p_.value();
  return FieldValue(a.p_, (std::uint64_t{a.value_} + b.value_) % p);
}

FieldValue operator-(FieldValue a, FieldValue b) {
  require_same_prime(a.p_, b.p_);
  const std::uint64_t p = a.p_.value();
  return FieldValue(a.p_, (std::uint64_t{a.value_} + p - b.value_) % p);
}

FieldValue operator*(FieldValue a, FieldValue b) {
  require_same_prime(a.p_, b.p_);
  const std::uint64_t p = a.p_.value();
  return FieldValue(a.p_, (std::uint64_t{a.value_} * b.value_) % p);
}

Cylinder Cylinder::parse(std::string_view bits) {
  if (bits.size() > 63) throw std::invalid_argument("cylinder prefix too long");
  Cylinder c;
  c.length = static_cast<unsigned>(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("cylinder prefix must be a bit string");
    c.index = (c.index << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return c;
}

std::string Cylinder::to_string() const {
  std::string out(length, '0');
  for (unsigned i = 0; i < length; ++i) {
    if ((index >> (length - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

GroupElement::GroupElement(Prime p, unsigned scale) : p_(p), scale_(scale) {
  if (scale > kMaxScale) throw std::invalid_argument("scale too large");
  bits_ = static_cast<unsigned>(std::bit_width(p.value() - 1U));
  per_word_ = 64 / bits_;
  words_.assign((size() + per_word_ - 1) / per_word_, 0);
}

void GroupElement::set(std::size_t t, Digit v) noexcept {
  const std::size_t word = t / per_word_;
  const unsigned shift = static_cast<unsigned>(t % per_word_) * bits_;
  words_[word] = (words_[word] & ~(mask() << shift)) | (std::uint64_t{v} << shift);
}

bool GroupElement::increment() noexcept {
  const Digit top = p_.value() - 1;
  for (std::size_t t = size(); t-- > 0;) {
    const Digit d = (*this)[t];
    if (d < top) {
      set(t, d + 1);
      return true;
    }
    set(t, 0);
  }
  return false;
}

GroupElement GroupElement::constant(Prime p, unsigned scale, FieldValue x) {
  require_same_prime(p, x.prime());
  GroupElement g(p, scale);
  if (x.value() != 0) {
    for (std::size_t t = 0; t < g.size(); ++t) g.set(t, x.value());
  }
  return g;
}

GroupElement GroupElement::from_digits(Prime p, unsigned scale, std::span<const Digit> digits) {
  GroupElement g(p, scale);
  if (digits.size() != g.size()) {
    throw std::invalid_argument("expected " + std::to_string(g.size()) + " digits, got " +
                                std::to_string(digits.size()));
  }
  for (std::size_t t = 0; t < digits.size(); ++t) {
    if (digits[t] >= p.value()) throw std::invalid_argument("digit not reduced mod p");
    g.set(t, digits[t]);
  }
  return g;
}

GroupElement GroupElement::from_index(Prime p, unsigned scale, std::uint64_t index) {
  GroupElement g(p, scale);
  for (std::size_t t = g.size(); t-- > 0 && index != 0;) {
    g.set(t, static_cast<Digit>(index % p.value()));
    index /= p.value();
  }
  if (index != 0) throw std::invalid_argument("index out of range for this group");
  return g;
}

Digit GroupElement::digit(std::size_t t) const {
  if (t >= size()) throw std::out_of_range("digit position out of range");
  return (*this)[t];
}

std::vector<Digit> GroupElement::digits() const {
  std::vector<Digit> out(size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = (*this)[t];
  return out;
}

std::uint64_t GroupElement::index() const {
  const std::uint64_t p = p_.value();
  std::uint64_t result = 0;
  for (std::size_t t = 0; t < size(); ++t) {
    if (result > (~0ULL - (*this)[t]) / p) throw std::overflow_error("group too large to index");
    result = result * p + (*this)[t];
  }
  return result;
}

std::size_t GroupElement::count(std::size_t offset, std::size_t length, Digit value) const noexcept {
  if (bits_ == 1) {
    std::size_t ones = 0;
    std::size_t t = offset;
    const std::size_t end = offset + length;
    while (t < end) {
      const std::size_t word = t / 64;
      const unsigned lo = static_cast<unsigned>(t % 64);
      const unsigned span = static_cast<unsigned>(std::min<std::size_t>(64 - lo, end - t));
      std::uint64_t bits = words_[word] >> lo;
      if (span < 64) bits &= (1ULL << span) - 1;
      ones += static_cast<std::size_t>(std::popcount(bits));
      t += span;
    }
    return value == 1 ? ones : (value == 0 ? length - ones : 0);
  }
  std::size_t n = 0;
  for (std::size_t t = offset; t < offset + length; ++t) n += ((*this)[t] == value);
  return n;
}

bool GroupElement::is_constant_on(unsigned n) const noexcept {
  if (n >= scale_) return true;
  const std::size_t block = std::size_t{1} << (scale_ - n);
  for (std::size_t start = 0; start < size(); start += block) {
    const Digit first = (*this)[start];
    if (count(start, block, first) != block) return false;
  }
  return true;
}

bool GroupElement::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

namespace {

char digit_char(Digit d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

}  // namespace

std::string GroupElement::to_string() const {
  std::string out = std::to_string(p_.value()) + "," + std::to_string(scale_) + ":";
  const bool compact = p_.value() <= 36;
  for (std::size_t t = 0; t < size(); ++t) {
    if (compact) {
      out.push_back(digit_char((*this)[t]));
    } else {
      if (t != 0) out.push_back('.');
      out += std::to_string((*this)[t]);
    }
  }
  return out;
}

GroupElement GroupElement::parse(std::string_view text) {
  const auto comma = text.find(',');
  const auto colon = text.find(':');
  if (comma == std::string_view::npos || colon == std::string_view::npos || colon < comma) {
    throw std::invalid_argument("element must look like \"p,scale:digits\"");
  }
  auto parse_uint = [](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("bad integer in element: " + std::string(s));
    }
    return v;
  };
  const Prime p(parse_uint(text.substr(0, comma)));
  const auto scale = parse_uint(text.substr(comma + 1, colon - comma - 1));
  if (scale > kMaxScale) throw std::invalid_argument("scale too large");
  const std::string_view body = text.substr(colon + 1);
  std::vector<Digit> digits;
  if (p.value() <= 36) {
    for (char ch : body) {
      Digit d;
      if (ch >= '0' && ch <= '9') {
        d = static_cast<Digit>(ch - '0');
      } else if (ch >= 'a' && ch <= 'z') {
        d = static_cast<Digit>(ch - 'a' + 10);
      } else {
        throw std::invalid_argument("bad digit character in element");
      }
      digits.push_back(d);
    }
  } else {
    std::size_t start = 0;
    while (start <= body.size()) {
      const auto dot = body.find('.', start);
      const auto end = dot == std::string_view::npos ? body.size() : dot;
      digits.push_back(static_cast<Digit>(parse_uint(body.substr(start, end - start))));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  }
  return from_digits(p, static_cast<unsigned>(scale), digits);
}

std::size_t GroupElement::hash() const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}((std::uint64_t{p_.value()} << 8) | scale_);
  for (std::uint64_t w : words_) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (a.p_ != b.p_) return false;
  if (a.scale_ == b.scale_) return a.words_ == b.words_;
  if (a.scale_ < b.scale_) return embed(a, b.scale_).words_ == b.words_;
  return a.words_ == embed(b, a.scale_).words_;
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  require_same_prime(a.p_, b.p_);
  if (a.scale_ != b.scale_) {
    const unsigned n = std::max(a.scale_, b.scale_);
    return add(embed(a, n), embed(b, n));
  }
  GroupElement out(a.p_, a.scale_);
  if (a.bits_ == 1) {
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = a.words_[w] ^ b.words_[w];
    return out;
  }
  const Digit p = a.p_.value();
  for (std::size_t t = 0; t < out.size(); ++t) {
    const Digit s = a[t] + b[t];
    out.set(t, s >= p ? s - p : s);
  }
  return out;
}

GroupElement neg(const GroupElement& a) {
  if (a.bits_ == 1) return a;
  GroupElement out(a.p_, a.scale_);
  const Digit p = a.p_.value();
  for (std::size_t t = 0; t < out.size(); ++t) {
    const Digit d = a[t];
    out.set(t, d == 0 ? 0 : p - d);
  }
  return out;
}

GroupElement sub(const GroupElement& a, const GroupElement& b) { return add(a, neg(b)); }

GroupElement scalar_mul(FieldValue c, const GroupElement& a) {
  require_same_prime(c.prime(), a.p_);
  GroupElement out(a.p_, a.scale_);
  if (c.value() == 0) return out;
  const std::uint64_t p = a.p_.value();
  for (std::size_t t = 0; t < out.size(); ++t) {
    out.set(t, static_cast<Digit>((std::uint64_t{a[t]} * c.value()) % p));
  }
  return out;
}

GroupElement embed(const GroupElement& g, unsigned scale) {
  if (scale < g.scale_) throw std::invalid_argument("cannot embed into a coarser scale");
  if (scale == g.scale_) return g;
  GroupElement out(g.p_, scale);
  const std::size_t repeat = std::size_t{1} << (scale - g.scale_);
  for (std::size_t t = 0; t < g.size(); ++t) {
    const Digit d = g[t];
    if (d == 0) continue;
    for (std::size_t r = 0; r < repeat; ++r) out.set(t * repeat + r, d);
  }
  return out;
}

GroupElement coarsen(const GroupElement& g, unsigned scale) {
  if (scale >= g.scale_) return embed(g, scale);
  if (!g.is_constant_on(scale)) {
    throw std::invalid_argument("element is not constant on scale-" + std::to_string(scale) +
                                " cylinders");
  }
  GroupElement out(g.p_, scale);
  const std::size_t block = std::size_t{1} << (g.scale_ - scale);
  for (std::size_t t = 0; t < out.size(); ++t) out.set(t, g[t * block]);
  return out;
}

GroupElement restrict(const GroupElement& g, Cylinder tau) {
  if (tau.length > g.scale_) throw std::invalid_argument("restriction prefix longer than scale");
  if (tau.length < 64 && tau.index >> tau.length != 0) {
    throw std::invalid_argument("cylinder index out of range");
  }
  GroupElement out(g.p_, g.scale_ - tau.length);
  const std::size_t offset = static_cast<std::size_t>(tau.index) * out.size();
  for (std::size_t t = 0; t < out.size(); ++t) out.set(t, g[offset + t]);
  return out;
}

std::size_t content_count(const GroupElement& g, std::span<const Digit> values) {
  std::vector<bool> wanted(g.modulus(), false);
  for (Digit v : values) {
    if (v < g.modulus()) wanted[v] = true;
  }
  std::size_t n = 0;
  for (Digit v = 0; v < g.modulus(); ++v) {
    if (wanted[v]) n += g.count(0, g.size(), v);
  }
  return n;
}

}  // namespace bohrsets
