#include "cone.hpp"

#include "pidwb/measures.hpp"

#include <bitset>
#include <stdexcept>

namespace pidwb::detail {

namespace {

constexpr std::size_t kMaxDim = 128;
using ZeroSet = std::bitset<kMaxDim>;

struct Ray {
  std::vector<Rational> x;
  ZeroSet zeros;
};

void normalize(Ray& r) {
  Rational s = 0;
  for (const auto& v : r.x) s += v;
  for (auto& v : r.x) {
    v /= s;
    v.canonicalize();
  }
}

}  // namespace

std::vector<std::vector<Rational>> extreme_rays(const std::vector<std::vector<Rational>>& C, std::size_t n,
                                                std::size_t limit) {
  if (n == 0) return {};
  if (n > kMaxDim) throw std::invalid_argument("extreme_rays: dimension too large");
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < n; ++i) {
    Ray r{std::vector<Rational>(n, Rational(0)), ZeroSet()};
    r.x[i] = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r.zeros.set(j);
    rays.push_back(std::move(r));
  }

  for (const auto& row : C) {
    if (row.size() != n) throw std::invalid_argument("extreme_rays: row has the wrong length");
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      Rational v = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(row[j]) != 0 && sgn(rays[k].x[j]) != 0) v += row[j] * rays[k].x[j];
      s[k] = v;
      int sg = sgn(v);
      if (sg > 0) pos.push_back(k);
      else if (sg < 0) neg.push_back(k);
      else next.push_back(rays[k]);
    }
    if (pos.empty() && neg.empty()) continue;
    // Combine adjacent pairs straddling the hyperplane (combinatorial adjacency test).
    for (std::size_t a : pos)
      for (std::size_t b : neg) {
        ZeroSet common = rays[a].zeros & rays[b].zeros;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == a || k == b) continue;
          if ((rays[k].zeros & common) == common) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r{std::vector<Rational>(n), common};
        Rational ca = -s[b], cb = s[a];
        for (std::size_t j = 0; j < n; ++j) r.x[j] = ca * rays[a].x[j] + cb * rays[b].x[j];
        normalize(r);
        next.push_back(std::move(r));
        if (next.size() > limit) throw SolverFailure("extreme ray enumeration exceeded its limit");
      }
    rays = std::move(next);
    if (rays.empty()) break;
  }
  std::vector<std::vector<Rational>> out;
  out.reserve(rays.size());
  for (auto& r : rays) {
    normalize(r);
    out.push_back(std::move(r.x));
  }
  return out;
}

}  // namespace pidwb::detail
