#pragma once
// Bratteli paths (0, 1/2, j_2, ..., j_N), spins stored doubled.

#include <cstdint>
#include <optional>
#include <string>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace qxxz {

struct BratteliPath {
  std::vector<int> two_j;  // two_j[0] = 0, |two_j[k+1] - two_j[k]| = 1

  int N() const { return static_cast<int>(two_j.size()) - 1; }
  int endpoint2() const { return two_j.back(); }
  bool restricted_ok(int r) const {
    for (size_t k = 1; k < two_j.size(); ++k)
      if (two_j[k] + 1 >= r) return false;
    return true;
  }
  bool operator==(const BratteliPath&) const = default;
  auto operator<=>(const BratteliPath&) const = default;
};

struct PathFamily {
  int N = 0;
  std::optional<int> r;
  std::optional<int> endpoint2;
  std::vector<BratteliPath> paths;
};

inline void check_restriction(std::optional<int> r) {
  if (r && *r < 3) throw std::invalid_argument("restricted paths need integer r >= 3");
}

// Lexicographic in step signs, + before -.
inline PathFamily enumerate_paths(int N, std::optional<int> r = std::nullopt,
                                  std::optional<int> endpoint2 = std::nullopt) {
  if (N < 0) throw std::invalid_argument("enumerate_paths: N must be non-negative");
  check_restriction(r);
  PathFamily fam{N, r, endpoint2, {}};
  std::vector<int> cur{0};
  auto rec = [&](auto&& self) -> void {
    int k = static_cast<int>(cur.size()) - 1;
    int remaining = N - k;
    if (remaining == 0) {
      if (!endpoint2 || cur.back() == *endpoint2) fam.paths.push_back({cur});
      return;
    }
    if (endpoint2 && std::abs(cur.back() - *endpoint2) > remaining) return;
    for (int step : {+1, -1}) {
      int nj = cur.back() + step;
      if (nj < 0) continue;
      if (r && nj + 1 >= *r) continue;
      cur.push_back(nj);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return fam;
}

inline std::string spin_label(int two_j) { return two_j % 2 ? std::to_string(two_j) + "/2" : std::to_string(two_j / 2); }

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// mu_j for any half-integer j with N/2 - j integral; out-of-range binomials vanish.
inline std::int64_t mu_extended(int N, int two_j) {
  if ((N - two_j) % 2 != 0) throw std::invalid_argument("mu: N/2 - j must be integral");
  return binomial(N, (N - two_j) / 2) - binomial(N, (N + two_j) / 2 + 1);
}

inline std::int64_t dim_gamma(int N, int two_j) {
  if (two_j < 0 || two_j > N) throw std::invalid_argument("dim_gamma: need 0 <= j <= N/2");
  return mu_extended(N, two_j);
}

inline std::int64_t dim_gamma_restricted(int N, int two_j, int r) {
  check_restriction(r);
  if (two_j < 0 || two_j + 1 >= r) throw std::invalid_argument("dim_gamma_restricted: need 2j+1 < r");
  std::int64_t s = 0;
  for (int k = -(N + 2); k <= N + 2; ++k) s += mu_extended(N, two_j + 2 * r * k);
  return s;
}

// Alternates between 0 and 1/2 as long as possible, then climbs to j.
inline BratteliPath zigzag_path(int N, int two_j) {
  if (two_j < 0 || two_j > N || (N - two_j) % 2) throw std::invalid_argument("zigzag_path: bad endpoint");
  BratteliPath p{{0}};
  for (int k = 1; k <= N - two_j; ++k) p.two_j.push_back(k % 2);
  while (p.N() < N) p.two_j.push_back(p.two_j.back() + 1);
  return p;
}

inline nlohmann::json to_json(const PathFamily& f) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : f.paths) a.push_back(p.two_j);
  return a;
}

}  // namespace qxxz
