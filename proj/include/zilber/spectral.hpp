#pragma once

#include "zilber/certificate.hpp"
#include "zilber/chains.hpp"
#include "zilber/filtration.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace zilber {

/// E_r^{p,q} with n = p + q:
///   Z_r^{p,n} = { x in F_p of degree n : dx in F_{p-r} }
///   E_r^{p,n} = Z_r^{p,n} / (Z_{r-1}^{p-1,n} + d Z_{r-1}^{p+r-1,n+1})
/// so E_0 = F_p/F_{p-1} and E_1^{p,q} = H_{p+q}(F_p/F_{p-1}).
struct PageEntry {
  std::size_t p = 0, n = 0;
  Matrix numerator, denominator;  // ambient generator columns in degree n
  Subquotient group;
};

struct Page {
  std::size_t r = 0;
  std::vector<std::vector<PageEntry>> entries;   // [p][n], 0 <= p <= p_max
  std::vector<std::vector<Matrix>> differential;  // [p][n]: E_r^{p,n} -> E_r^{p-r,n-1}, in reduced coordinates

  // Nullptr outside 0 <= p <= p_max, 0 <= n <= top.
  const PageEntry* entry(long p, long n) const;
  PresentedMap d(long p, long n) const;  // zero map when either end is out of range
  std::vector<std::vector<AbelianGroupInvariants>> invariants() const;
};

class SpectralSequence {
 public:
  // Pages r = 1..max(r_max, p_max + 1); the last one is E_infinity.
  SpectralSequence(FilteredChainComplex f, std::size_t r_max);

  const FilteredChainComplex& source() const { return f_; }
  std::size_t r_max() const { return pages_.size(); }
  const Page& page(std::size_t r) const { return pages_.at(r - 1); }
  // E_r stops changing once r > p_max.
  const Page& infinity() const { return pages_.at(f_.p_max()); }

  nlohmann::json to_json() const;

 private:
  FilteredChainComplex f_;
  std::vector<Page> pages_;
};

SpectralSequence compute_pages(const FilteredChainComplex& f, std::size_t r_max);

/// gr_p H_n for the image filtration F_p H = im(H(F_p) -> H), computed from cycles and boundaries directly.
std::vector<std::vector<AbelianGroupInvariants>> associated_graded_homology(const FilteredChainComplex& f);

/// d_r d_r = 0, E_{r+1} = H(E_r, d_r), stability past p_max and E_infinity = gr H.
Certificate spectral_check(const SpectralSequence& s);

/// E_1 of the normalized skeletal filtration of a, with d_1, is N(a): E_1^{p,n} = 0 off the diagonal,
/// E_1^{p,p} free of rank N_p, and d_1 equals the normalized differential in generator coordinates.
Certificate heart_check(const SimplicialAbelianGroup& a);

/// Page-r products E_r(F) (x) E_r(G) -> E_r(H) induced by a filtered pairing, on generators,
/// in total degrees below the top degree of the pairing's chain map.
struct PagePairing {
  using Key = std::array<std::size_t, 4>;  // (p, n) of the left factor, (p', n') of the right
  std::size_t r = 0;
  Page left, right, target;
  // products[key] column i * (right generators) + j holds the target coordinates of x_i y_j.
  std::map<Key, Matrix> products;
  Certificate lift_independence;

  // Bilinear extension to coordinate vectors; zero vector when the target group is absent.
  Vector multiply(const Key& key, std::span<const Integer> x, std::span<const Integer> y) const;
  void flip_sign(const Key& key, std::size_t column);
};

PagePairing induced_pairing(const FilteredPairing& pairing, const SpectralSequence& sf, const SpectralSequence& sg,
                            const SpectralSequence& sh, std::size_t r);

/// d_r(xy) = d_r(x) y + (-1)^{p+q} x d_r(y) on all generator pairs of the page.
Certificate leibniz_check(const PagePairing& pairing);

}  // namespace zilber
