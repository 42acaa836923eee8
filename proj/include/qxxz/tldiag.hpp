#pragma once
// Temperley-Lieb link-state calculus with exact Laurent-polynomial coefficients.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paths.hpp"

namespace qxxz {

using BigInt = boost::multiprecision::cpp_int;

// Laurent polynomial in q with integer coefficients.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int e, BigInt c = 1) {
    Laurent l;
    if (c != 0) l.c_[e] = c;
    return l;
  }
  static Laurent loop() { return monomial(1, -1) + monomial(-1, -1); }  // -(q + q^{-1})

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.c_) {
      BigInt& t = c_[e];
      t += c;
      if (t == 0) c_.erase(e);
    }
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(const Laurent& a, const Laurent& b) {
    Laurent n = b;
    for (auto& [e, c] : n.c_) c = -c;
    return a + n;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent out;
    for (const auto& [ea, ca] : a.c_)
      for (const auto& [eb, cb] : b.c_) out += monomial(ea + eb, ca * cb);
    return out;
  }
  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool is_zero() const { return c_.empty(); }
  // exponent when this is +-q^e, empty otherwise
  std::optional<int> monomial_exponent(BigInt* coeff = nullptr) const {
    if (c_.size() != 1) return std::nullopt;
    if (coeff) *coeff = c_.begin()->second;
    return c_.begin()->first;
  }
  std::complex<double> eval(std::complex<double> q) const {
    std::complex<double> s = 0;
    for (const auto& [e, c] : c_) s += c.convert_to<double>() * std::pow(q, e);
    return s;
  }
  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : c_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")q^" + std::to_string(e);
    }
    return s;
  }
  const std::map<int, BigInt>& terms() const { return c_; }

 private:
  std::map<int, BigInt> c_;
};

// Non-crossing partial pairing of points 1..N; partner 0 marks a through strand.
struct CapDiagram {
  std::vector<int> partner;  // 1-based, partner[0] unused

  int N() const { return static_cast<int>(partner.size()) - 1; }
  int caps() const {
    int c = 0;
    for (int i = 1; i <= N(); ++i) c += partner[i] > i;
    return c;
  }
  std::vector<std::pair<int, int>> cap_list() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= N(); ++i)
      if (partner[i] > i) out.emplace_back(i, partner[i]);
    return out;
  }
  std::vector<int> through_strands() const {
    std::vector<int> out;
    for (int i = 1; i <= N(); ++i)
      if (partner[i] == 0) out.push_back(i);
    return out;
  }
  bool non_crossing() const {
    auto cl = cap_list();
    for (auto [a, b] : cl) {
      for (auto [c, d] : cl)
        if (a < c && c < b && b < d) return false;
      for (int t : through_strands())
        if (a < t && t < b) return false;
    }
    return true;
  }
  auto operator<=>(const CapDiagram&) const = default;
  static CapDiagram identity(int N) { return {std::vector<int>(N + 1, 0)}; }
};

struct GeneratorImage {
  std::optional<CapDiagram> diagram;  // empty: zero class
  Laurent scalar;
};

// e_i composed below d. In quotient mode joining two through strands gives zero.
inline GeneratorImage act_generator(const CapDiagram& d, int i, bool quotient = true) {
  const int N = d.N();
  if (i < 1 || i > N - 1) throw std::out_of_range("act_generator: generator index");
  const int a = d.partner[i], b = d.partner[i + 1];
  CapDiagram out = d;
  if (a == i + 1) return {d, Laurent::loop()};
  if (a == 0 && b == 0) {
    if (quotient) return {std::nullopt, Laurent()};
  } else if (a != 0 && b != 0) {
    out.partner[a] = b;
    out.partner[b] = a;
  } else {
    int other = a != 0 ? a : b;
    out.partner[other] = 0;
  }
  out.partner[i] = i + 1;
  out.partner[i + 1] = i;
  return {out, Laurent::monomial(0)};
}

using LinkVector = std::map<CapDiagram, Laurent>;

inline LinkVector apply_e(const LinkVector& v, int i, bool quotient = true) {
  LinkVector out;
  for (const auto& [d, c] : v) {
    auto img = act_generator(d, i, quotient);
    if (!img.diagram) continue;
    Laurent t = c * img.scalar;
    Laurent& slot = out[*img.diagram];
    slot += t;
    if (slot.is_zero()) out.erase(*img.diagram);
  }
  return out;
}

// b_i = q^{-1} + e_i, b_i^{-1} = q + e_i
inline LinkVector apply_b(const LinkVector& v, int i, bool inverse = false, bool quotient = true) {
  LinkVector out = apply_e(v, i, quotient);
  const Laurent s = Laurent::monomial(inverse ? 1 : -1);
  for (const auto& [d, c] : v) {
    Laurent& slot = out[d];
    slot += c * s;
    if (slot.is_zero()) out.erase(d);
  }
  return out;
}

// Rightmost letter acts first.
inline LinkVector apply_word_e(LinkVector v, const std::vector<int>& word, bool quotient = true) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_e(v, *it, quotient);
  return v;
}

inline int jumps(const std::vector<int>& word) {
  int j = 0;
  for (size_t k = 0; k + 1 < word.size(); ++k) j += std::abs(word[k] - word[k + 1]) > 1;
  return j;
}

struct ReducedWord {
  std::vector<int> m;     // m_1 < ... < m_{k+1}
  std::vector<int> word;  // generator indices, left to right
  CapDiagram diagram;
};

// w_{m_1..m_{k+1}} = w_1^{(m_1)} w_3^{(m_2)} ... w_{2k+1}^{(m_{k+1})}, w_n^{(m)} = e_m e_{m-1} ... e_n, m_i >= 2i-1.
inline std::vector<ReducedWord> reduced_word_basis(int N, int k) {
  if (k < -1 || k > N / 2 - 1) throw std::invalid_argument("reduced_word_basis: k out of range");
  std::vector<ReducedWord> out;
  std::vector<int> m;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k + 1) {
      ReducedWord w{m, {}, CapDiagram::identity(N)};
      for (int t = 0; t <= k; ++t)
        for (int g = m[t]; g >= 2 * t + 1; --g) w.word.push_back(g);
      LinkVector v{{CapDiagram::identity(N), Laurent::monomial(0)}};
      v = apply_word_e(v, w.word, false);
      if (v.size() != 1) throw std::logic_error("reduced_word_basis: word is not a single diagram");
      w.diagram = v.begin()->first;
      out.push_back(w);
      return;
    }
    const int lo = std::max(2 * i + 1, i == 0 ? 1 : m.back() + 1);
    for (int v = lo; v <= N - 1; ++v) {
      m.push_back(v);
      self(self, i + 1);
      m.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::int64_t dim_W(int N, int k) { return binomial(N - 1, k + 1) - binomial(N - 1, k - 1); }

// caps (1,2), (3,4), ..., (2k+1, 2k+2)
inline CapDiagram canonical_diagram(int N, int k) {
  CapDiagram d = CapDiagram::identity(N);
  for (int c = 0; c <= k; ++c) {
    d.partner[2 * c + 1] = 2 * c + 2;
    d.partner[2 * c + 2] = 2 * c + 1;
  }
  return d;
}

struct BetaSquaredResult {
  Laurent scalar;               // coefficient of the start diagram
  bool diagonal = true;         // no other diagram survives
  std::optional<int> exponent;  // e in q^e when the scalar is a monic monomial
};

// beta^2 on W_k, evaluated exactly on the canonical diagram.
inline BetaSquaredResult beta_squared_diagrammatic(int N, int k) {
  if (k < -1 || k > N / 2 - 1) throw std::invalid_argument("beta_squared_diagrammatic: k out of range");
  CapDiagram start = canonical_diagram(N, k);
  LinkVector v{{start, Laurent::monomial(0)}};
  std::vector<int> beta;
  for (int n = 1; n <= N - 1; ++n)
    for (int i = n; i >= 1; --i) beta.push_back(i);
  for (int rep = 0; rep < 2; ++rep)
    for (auto it = beta.rbegin(); it != beta.rend(); ++it) v = apply_b(v, *it);
  BetaSquaredResult res;
  res.scalar = v.count(start) ? v.at(start) : Laurent();
  res.diagonal = v.size() == (res.scalar.is_zero() ? 0u : 1u);
  BigInt c;
  if (auto e = res.scalar.monomial_exponent(&c); e && c == 1) res.exponent = e;
  return res;
}

}  // namespace qxxz
