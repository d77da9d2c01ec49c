#include "zilber/delta.hpp"

#include "zilber/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace zilber {

MonotoneMap::MonotoneMap(std::size_t codomain, std::vector<std::size_t> vals)
    : domain_top(0), codomain_top(codomain), values(std::move(vals)) {
  require(!values.empty(), ErrorCode::invalid_argument, "monotone map needs at least one value");
  domain_top = values.size() - 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] <= codomain_top, ErrorCode::invalid_argument, "monotone map value out of range");
    require(i == 0 || values[i - 1] <= values[i], ErrorCode::invalid_argument, "map is not monotone");
  }
}

MonotoneMap MonotoneMap::identity(std::size_t n) {
  std::vector<std::size_t> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = i;
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::coface(std::size_t n, std::size_t i) {
  require(n >= 1 && i <= n, ErrorCode::invalid_argument, "coface index out of range");
  std::vector<std::size_t> v;
  for (std::size_t j = 0; j < n; ++j) v.push_back(j < i ? j : j + 1);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::codegeneracy(std::size_t n, std::size_t i) {
  require(i <= n, ErrorCode::invalid_argument, "codegeneracy index out of range");
  std::vector<std::size_t> v;
  for (std::size_t j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
  return MonotoneMap(n, std::move(v));
}

MonotoneMap MonotoneMap::constant(std::size_t m, std::size_t n, std::size_t value) {
  return MonotoneMap(n, std::vector<std::size_t>(m + 1, value));
}

bool MonotoneMap::is_injective() const {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) return false;
  return true;
}

bool MonotoneMap::is_surjective() const {
  if (values.front() != 0 || values.back() != codomain_top) return false;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[i - 1] + 1) return false;
  return true;
}

std::string MonotoneMap::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  os << "):[" << domain_top << "]->[" << codomain_top << "]";
  return os.str();
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  require(f.codomain_top == g.domain_top, ErrorCode::invalid_argument, "monotone maps are not composable");
  std::vector<std::size_t> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.values[f.values[i]];
  return MonotoneMap(g.codomain_top, std::move(v));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<MonotoneMap> enumerate_monotone(std::size_t m, std::size_t n) {
  std::vector<MonotoneMap> out;
  std::vector<std::size_t> v(m + 1, 0);
  for (;;) {
    out.emplace_back(n, v);
    std::size_t i = m + 1;
    while (i > 0 && v[i - 1] == n) --i;
    if (i == 0) break;
    ++v[i - 1];
    for (std::size_t j = i; j <= m; ++j) v[j] = v[i - 1];
  }
  return out;
}

std::vector<MonotoneMap> enumerate_surjections(std::size_t m, std::size_t k) {
  std::vector<MonotoneMap> out;
  if (k > m) return out;
  for (auto& f : enumerate_monotone(m, k))
    if (f.is_surjective()) out.push_back(std::move(f));
  return out;
}

namespace {

// Nondecreasing sequences of given length with values in [lo, n].
std::size_t count_sequences(std::size_t length, std::size_t lo, std::size_t n) {
  if (length == 0) return 1;
  if (lo > n) return 0;
  return binomial(n - lo + length, length);
}

}  // namespace

std::size_t monotone_rank(const MonotoneMap& f) {
  std::size_t r = 0, prev = 0;
  const std::size_t len = f.values.size();
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t v = prev; v < f.values[t]; ++v) r += count_sequences(len - t - 1, v, f.codomain_top);
    prev = f.values[t];
  }
  return r;
}

MonotoneMap monotone_unrank(std::size_t m, std::size_t n, std::size_t rank) {
  require(rank < binomial(m + n + 1, m + 1), ErrorCode::invalid_argument, "monotone rank out of range");
  std::vector<std::size_t> v(m + 1);
  std::size_t prev = 0;
  for (std::size_t t = 0; t <= m; ++t) {
    std::size_t val = prev;
    for (;; ++val) {
      std::size_t c = count_sequences(m - t, val, n);
      if (rank < c) break;
      rank -= c;
    }
    v[t] = prev = val;
  }
  return MonotoneMap(n, std::move(v));
}

EpiMono epi_mono_factorize(const MonotoneMap& f) {
  std::vector<std::size_t> image;
  std::vector<std::size_t> epi(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (image.empty() || image.back() != f.values[i]) image.push_back(f.values[i]);
    epi[i] = image.size() - 1;
  }
  const std::size_t k = image.size() - 1;
  return {MonotoneMap(k, std::move(epi)), MonotoneMap(f.codomain_top, std::move(image))};
}

std::vector<SimplicialOp> operator_word(const MonotoneMap& theta) {
  auto [eta, eps] = epi_mono_factorize(theta);
  std::vector<SimplicialOp> word;
  // eps misses j_1 < ... < j_r; eps^* = d_{j_1} ... d_{j_r}, so d_{j_r} acts first.
  std::vector<bool> hit(eps.codomain_top + 1, false);
  for (auto v : eps.values) hit[v] = true;
  for (std::size_t j = eps.codomain_top + 1; j-- > 0;)
    if (!hit[j]) word.push_back({SimplicialOp::face, j});
  // eta = eta' o sigma_j with j the first repeat; eta^* = s_j o eta'^*.
  std::vector<SimplicialOp> degs;
  std::vector<std::size_t> v = eta.values;
  for (;;) {
    std::size_t j = 0;
    while (j + 1 < v.size() && v[j] != v[j + 1]) ++j;
    if (j + 1 >= v.size()) break;
    degs.push_back({SimplicialOp::degeneracy, j});
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
  }
  word.insert(word.end(), degs.rbegin(), degs.rend());
  return word;
}

MonotoneMap Shuffle::first() const {
  std::vector<std::size_t> v{0};
  std::size_t k = 0;
  for (std::size_t t = 1; t <= p + q; ++t) {
    if (std::binary_search(first_steps.begin(), first_steps.end(), t)) ++k;
    v.push_back(k);
  }
  return MonotoneMap(p, std::move(v));
}

MonotoneMap Shuffle::second() const {
  std::vector<std::size_t> v{0};
  std::size_t k = 0;
  for (std::size_t t = 1; t <= p + q; ++t) {
    if (!std::binary_search(first_steps.begin(), first_steps.end(), t)) ++k;
    v.push_back(k);
  }
  return MonotoneMap(q, std::move(v));
}

std::vector<std::size_t> Shuffle::permutation() const {
  std::vector<std::size_t> perm(p + q);
  std::size_t a = 0, b = p;
  for (std::size_t t = 1; t <= p + q; ++t)
    perm[t - 1] = std::binary_search(first_steps.begin(), first_steps.end(), t) ? a++ : b++;
  return perm;
}

int permutation_parity(const std::vector<std::size_t>& perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

int shuffle_sign_by_product(const Shuffle& s) {
  int sign = 1;
  for (std::size_t i : s.first_steps)
    for (std::size_t j = 1; j < i; ++j)
      if (!std::binary_search(s.first_steps.begin(), s.first_steps.end(), j)) sign = -sign;
  return sign;
}

std::vector<Shuffle> shuffles(std::size_t p, std::size_t q) {
  std::vector<Shuffle> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t next) {
    if (pick.size() == p) {
      Shuffle s;
      s.p = p;
      s.q = q;
      s.first_steps = pick;
      s.sign = permutation_parity(s.permutation());
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t t = next; t + (p - pick.size()) <= p + q + 1; ++t) {
      pick.push_back(t);
      rec(t + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

bool product_leq(const PosetPoint& a, const PosetPoint& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace {

std::vector<PosetPoint> all_points(const std::vector<std::size_t>& ns) {
  std::vector<PosetPoint> pts{PosetPoint{}};
  for (std::size_t n : ns) {
    std::vector<PosetPoint> next;
    for (const auto& p : pts)
      for (std::size_t v = 0; v <= n; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

std::vector<PosetChain> chains(const std::vector<std::size_t>& ns, std::size_t length, bool strict) {
  const auto pts = all_points(ns);
  std::vector<PosetChain> out;
  PosetChain cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == length) {
      out.push_back(cur);
      return;
    }
    for (const auto& p : pts) {
      if (!cur.empty()) {
        if (!product_leq(cur.back(), p)) continue;
        if (strict && cur.back() == p) continue;
      }
      cur.push_back(p);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

}  // namespace

std::vector<PosetChain> poset_maps(const std::vector<std::size_t>& ns, std::size_t m) { return chains(ns, m + 1, false); }

std::vector<PosetChain> product_nondegenerate(const std::vector<std::size_t>& ns, std::size_t k) {
  return chains(ns, k + 1, true);
}

}  // namespace zilber
