#include "zilber/filtration.hpp"

#include "zilber/delta.hpp"
#include "zilber/doldkan.hpp"
#include "zilber/error.hpp"
#include "zilber/ez.hpp"

#include <map>

namespace zilber {
namespace {

Matrix reduced(const Matrix& gens) {
  if (gens.cols() == 0) return gens;
  return image_basis(gens);
}

Matrix hstack_all(std::size_t rows, const std::vector<Matrix>& parts) {
  std::size_t cols = 0;
  for (const auto& m : parts) cols += m.cols();
  Matrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& m : parts) {
    out.set_block(0, c, m);
    c += m.cols();
  }
  return out;
}

// Generators of the tensor of two stages inside degree k of the ambient tensor.
Matrix tensor_stage(const FilteredChainComplex& f, long p, const FilteredChainComplex& g, long q,
                    const TensorLayout& lay, std::size_t k) {
  std::vector<Matrix> parts;
  for (std::size_t i = 0; i <= k; ++i) {
    const std::size_t j = k - i;
    if (lay.left_rank(i) == 0 || lay.right_rank(j) == 0) continue;
    Matrix block = kron(f.stage(p, i), g.stage(q, j));
    Matrix placed(lay.rank(k), block.cols());
    placed.set_block(lay.offset(k, i), 0, block);
    parts.push_back(std::move(placed));
  }
  return hstack_all(lay.rank(k), parts);
}

Certificate failed(Certificate cert, nlohmann::json witness) {
  cert.pass = false;
  cert.witness = std::move(witness);
  return cert;
}

}  // namespace

FilteredChainComplex::FilteredChainComplex(ChainComplex ambient, std::vector<std::vector<Matrix>> stages)
    : ambient_(std::move(ambient)), stages_(std::move(stages)) {
  if (auto v = violation()) fail(ErrorCode::validation, "filtered complex: " + *v);
}

FilteredChainComplex FilteredChainComplex::constant(const ChainComplex& c) {
  std::vector<Matrix> s;
  for (std::size_t k = 0; k <= c.top_degree(); ++k) s.push_back(Matrix::identity(c.rank(k)));
  return FilteredChainComplex(c, {s});
}

FilteredChainComplex FilteredChainComplex::unit() { return constant(ChainComplex::concentrated(0, 1)); }

Matrix FilteredChainComplex::stage(long p, std::size_t k) const {
  if (k > top_degree()) return Matrix(0, 0);
  if (p < 0) return Matrix(ambient_.rank(k), 0);
  if (static_cast<std::size_t>(p) > p_max()) return Matrix::identity(ambient_.rank(k));
  return stages_[p][k];
}

std::vector<std::size_t> FilteredChainComplex::stage_ranks(long p) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= top_degree(); ++k) out.push_back(rank(stage(p, k)));
  return out;
}

std::optional<std::string> FilteredChainComplex::violation() const {
  if (stages_.empty()) return "no stages";
  const std::size_t degrees = ambient_.top_degree() + 1;
  for (std::size_t p = 0; p < stages_.size(); ++p) {
    if (stages_[p].size() != degrees) return "stage " + std::to_string(p) + " has the wrong number of degrees";
    for (std::size_t k = 0; k < degrees; ++k)
      if (stages_[p][k].rows() != ambient_.rank(k))
        return "stage " + std::to_string(p) + " degree " + std::to_string(k) + " has the wrong ambient rank";
  }
  for (std::size_t p = 0; p < stages_.size(); ++p)
    for (std::size_t k = 0; k < degrees; ++k) {
      const std::string where = "stage " + std::to_string(p) + " degree " + std::to_string(k);
      if (k >= 1 && !span_contains(stages_[p][k - 1], ambient_.differential(k) * stages_[p][k]))
        return where + " is not closed under d";
      if (p >= 1 && !span_contains(stages_[p][k], stages_[p - 1][k]))
        return where + " does not contain the previous stage";
      if (p + 1 == stages_.size() && !span_contains(stages_[p][k], Matrix::identity(ambient_.rank(k))))
        return where + " is the last stage but not the whole ambient";
    }
  return std::nullopt;
}

FilteredChainComplex day_convolution(const FilteredChainComplex& f, const FilteredChainComplex& g) {
  ChainComplex amb = tensor(f.ambient(), g.ambient());
  TensorLayout lay(f.ambient().ranks(), g.ambient().ranks());
  const std::size_t pmax = f.p_max() + g.p_max();
  std::vector<std::vector<Matrix>> stages(pmax + 1);
  for (std::size_t n = 0; n <= pmax; ++n)
    for (std::size_t k = 0; k <= amb.top_degree(); ++k) {
      std::vector<Matrix> parts;
      for (std::size_t p = 0; p <= n; ++p)
        parts.push_back(tensor_stage(f, static_cast<long>(p), g, static_cast<long>(n - p), lay, k));
      stages[n].push_back(reduced(hstack_all(amb.rank(k), parts)));
    }
  return FilteredChainComplex(std::move(amb), std::move(stages));
}

bool stages_equal(const FilteredChainComplex& f, const FilteredChainComplex& g,
                  const std::vector<Matrix>& identification) {
  if (f.top_degree() != g.top_degree()) return false;
  const long pmax = static_cast<long>(std::max(f.p_max(), g.p_max()));
  for (long p = 0; p <= pmax; ++p)
    for (std::size_t k = 0; k <= f.top_degree(); ++k)
      if (!spans_equal(identification.at(k) * f.stage(p, k), g.stage(p, k))) return false;
  return true;
}

bool stages_equal(const FilteredChainComplex& f, const FilteredChainComplex& g) {
  std::vector<Matrix> id;
  for (std::size_t k = 0; k <= f.top_degree(); ++k) id.push_back(Matrix::identity(f.ambient().rank(k)));
  return f.ambient() == g.ambient() && stages_equal(f, g, id);
}

FilteredChainComplex skeletal_filtration(const SimplicialAbelianGroup& a, ChainModel model) {
  const std::size_t top = a.dim_bound();
  std::optional<NormalizationResult> na;
  ChainComplex amb;
  if (model == ChainModel::normalized) {
    na = normalize(a);
    amb = na->normalized;
  } else {
    amb = unnormalized_chains(a);
  }
  std::vector<std::vector<Matrix>> stages(top + 1);
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t k = 0; k <= top; ++k) {
      if (k <= p) {
        stages[p].push_back(Matrix::identity(amb.rank(k)));
        continue;
      }
      // every degeneracy composite from a level below p factors through level p
      std::vector<SparseVec> cols;
      for (const auto& eta : enumerate_surjections(k, p)) {
        SparseMatrix img = a.apply(eta);
        if (na) img = na->projection[k] * img;
        for (std::size_t c = 0; c < img.cols(); ++c)
          if (!img.column(c).empty()) cols.push_back(img.column(c));
      }
      std::sort(cols.begin(), cols.end(), [](const SparseVec& x, const SparseVec& y) { return x.entries() < y.entries(); });
      cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
      Matrix gens(amb.rank(k), cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c].entries()) gens(r, c) = v;
      stages[p].push_back(reduced(gens));
    }
  return FilteredChainComplex(std::move(amb), std::move(stages));
}

std::vector<GradedPiece> graded_pieces(const FilteredChainComplex& f) {
  std::vector<GradedPiece> out;
  const std::size_t top = f.top_degree();
  for (std::size_t p = 0; p <= f.p_max(); ++p) {
    std::vector<Subquotient> sq;
    std::vector<std::size_t> ranks;
    GradedPiece piece;
    for (std::size_t k = 0; k <= top; ++k) {
      sq.emplace_back(f.stage(static_cast<long>(p), k), f.stage(static_cast<long>(p) - 1, k));
      require(sq.back().invariants().torsion.empty(), ErrorCode::validation,
              "graded piece " + std::to_string(p) + " has torsion in degree " + std::to_string(k));
      ranks.push_back(sq.back().generator_count());
      piece.lifts.push_back(sq.back().lifts());
    }
    std::vector<Matrix> diffs;
    for (std::size_t k = 1; k <= top; ++k) {
      Matrix image = f.ambient().differential(k) * piece.lifts[k];
      Matrix d(ranks[k - 1], ranks[k]);
      for (std::size_t c = 0; c < ranks[k]; ++c) {
        auto coords = sq[k - 1].coordinates(image.column(c));
        require(coords.has_value(), ErrorCode::internal, "graded piece: d leaves the stage");
        d.set_column(c, *coords);
      }
      diffs.push_back(std::move(d));
    }
    piece.complex = ChainComplex(std::move(ranks), std::move(diffs));
    out.push_back(std::move(piece));
  }
  return out;
}

namespace {

Vector pair_apply(const TensorLayout& lay, const ChainMap& m, std::size_t n, std::span<const Integer> x,
                  std::size_t n2, std::span<const Integer> y) {
  const std::size_t k = n + n2;
  require(k < m.degrees(), ErrorCode::overflow, "pairing: degree " + std::to_string(k) + " is beyond the map");
  Vector v(lay.rank(k));
  const std::size_t off = lay.offset(k, n), w = lay.right_rank(n2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) v[off + i * w + j] = x[i] * y[j];
  }
  return m.component(k).apply(v);
}

}  // namespace

namespace {

// m applied to all pairs of stage generators in bidegree (i, j): one column per pair.
class PairingImages {
 public:
  PairingImages(const FilteredChainComplex& f, const FilteredChainComplex& g, const ChainMap& m)
      : f_(f), g_(g), lay_(f.ambient().ranks(), g.ambient().ranks()) {
    for (std::size_t k = 0; k < m.degrees(); ++k) m_.push_back(SparseMatrix::from_dense(m.component(k)));
  }
  std::size_t degrees() const { return m_.size(); }

  Matrix images(long p, std::size_t i, long q, std::size_t j) const {
    const std::size_t k = i + j;
    Matrix x = f_.stage(p, i), y = g_.stage(q, j);
    Matrix out(m_[k].rows(), x.cols() * y.cols());
    if (out.cols() == 0) return out;
    const std::size_t off = lay_.offset(k, i), w = lay_.right_rank(j);
    std::vector<SparseVec> xs, ys;
    for (std::size_t a = 0; a < x.cols(); ++a) xs.push_back(SparseVec::from_dense(x.column(a)));
    for (std::size_t b = 0; b < y.cols(); ++b) ys.push_back(SparseVec::from_dense(y.column(b)));
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = 0; b < ys.size(); ++b) {
        std::vector<SparseVec::Entry> e;
        for (const auto& [r, u] : xs[a].entries())
          for (const auto& [c, v] : ys[b].entries()) e.emplace_back(static_cast<std::uint32_t>(off + r * w + c), u * v);
        SparseVec image = m_[k].apply(SparseVec(std::move(e)));
        for (const auto& [r, v] : image.entries()) out(r, a * ys.size() + b) = v;
      }
    return out;
  }

 private:
  const FilteredChainComplex& f_;
  const FilteredChainComplex& g_;
  TensorLayout lay_;
  std::vector<SparseMatrix> m_;
};

}  // namespace

std::optional<nlohmann::json> pairing_violation(const FilteredChainComplex& f, const FilteredChainComplex& g,
                                                const FilteredChainComplex& h, const ChainMap& m) {
  PairingImages img(f, g, m);
  std::map<std::pair<std::size_t, std::size_t>, LatticeSolver> solvers;
  for (std::size_t p = 0; p <= f.p_max(); ++p)
    for (std::size_t q = 0; q <= g.p_max(); ++q) {
      if (p + q >= h.p_max()) continue;  // the target stage is everything
      for (std::size_t i = 0; i <= f.top_degree(); ++i)
        for (std::size_t j = 0; j <= g.top_degree() && i + j < img.degrees(); ++j) {
          Matrix v = img.images(static_cast<long>(p), i, static_cast<long>(q), j);
          if (v.cols() == 0 || v.is_zero()) continue;
          auto key = std::make_pair(p + q, i + j);
          auto it = solvers.find(key);
          if (it == solvers.end())
            it = solvers.emplace(key, LatticeSolver(h.stage(static_cast<long>(p + q), i + j))).first;
          const LatticeSolver& solver = it->second;
          for (std::size_t c = 0; c < v.cols(); ++c)
            if (!solver.contains(v.column(c))) {
              const std::size_t ny = g.stage(static_cast<long>(q), j).cols();
              return nlohmann::json{{"p", p}, {"q", q}, {"left_degree", i}, {"right_degree", j},
                                    {"left_generator", c / ny}, {"right_generator", c % ny}};
            }
        }
    }
  return std::nullopt;
}

FilteredPairing::FilteredPairing(FilteredChainComplex f, FilteredChainComplex g, FilteredChainComplex h, ChainMap m)
    : f_(std::move(f)), g_(std::move(g)), h_(std::move(h)), m_(std::move(m)) {
  TensorLayout lay(f_.ambient().ranks(), g_.ambient().ranks());
  for (std::size_t k = 0; k < m_.degrees(); ++k)
    require(m_.source().rank(k) == lay.rank(k) && m_.target().rank(k) == h_.ambient().rank(k),
            ErrorCode::invalid_argument, "filtered pairing: map does not match the ambients");
  if (auto w = pairing_violation(f_, g_, h_, m_))
    fail(ErrorCode::containment, "filtered pairing: filtration violated at " + w->dump());
}

Vector FilteredPairing::apply(std::size_t n, std::span<const Integer> x, std::size_t n2,
                              std::span<const Integer> y) const {
  return pair_apply(TensorLayout(f_.ambient().ranks(), g_.ambient().ranks()), m_, n, x, n2, y);
}

namespace {

struct EzParts {
  FilteredChainComplex f, g, h;
  ChainMap m;
};

EzParts ez_parts(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, ChainModel model) {
  ChainMap m = model == ChainModel::normalized ? shuffle_product(a, b, true).map : unnormalized_shuffle_product(a, b);
  return {skeletal_filtration(a, model), skeletal_filtration(b, model),
          skeletal_filtration(levelwise_tensor(a, b), model), std::move(m)};
}

}  // namespace

FilteredPairing filtered_ez(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, ChainModel model) {
  EzParts parts = ez_parts(a, b, model);
  return FilteredPairing(std::move(parts.f), std::move(parts.g), std::move(parts.h), std::move(parts.m));
}

Certificate filtered_ez_check(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, ChainModel model) {
  Certificate cert;
  cert.name = "filtered_ez";
  EzParts parts = ez_parts(a, b, model);
  const auto& [f, g, h, m] = parts;
  if (auto w = pairing_violation(f, g, h, m)) return failed(cert, *w);
  TensorLayout lay(f.ambient().ranks(), g.ambient().ranks());
  PairingImages img(f, g, m);
  // rank tables are only affordable on normalized chains
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t p = 0; model == ChainModel::normalized && p <= f.p_max(); ++p)
    for (std::size_t q = 0; q <= g.p_max(); ++q) {
      std::size_t image_rank = 0, target_rank = 0;
      for (std::size_t k = 0; k < m.degrees(); ++k) {
        std::vector<Matrix> parts;
        for (std::size_t i = 0; i <= k; ++i)
          if (i <= f.top_degree() && k - i <= g.top_degree())
            parts.push_back(img.images(static_cast<long>(p), i, static_cast<long>(q), k - i));
        image_rank += rank(hstack_all(m.target().rank(k), parts));
        target_rank += rank(h.stage(static_cast<long>(p + q), k));
      }
      table.push_back({{"p", p}, {"q", q}, {"image_rank", image_rank}, {"target_rank", target_rank}});
    }
  // filtration 0: F_0 (x) G_0 -> H_0 is an isomorphism, in every degree for normalized chains;
  // unnormalized stage 0 carries degenerate vertices in each degree, so only degree 0 compares
  const std::size_t iso_degrees = model == ChainModel::normalized ? m.degrees() : 1;
  for (std::size_t k = 0; k < iso_degrees; ++k) {
    Matrix src = reduced(tensor_stage(f, 0, g, 0, lay, k));
    Matrix tgt = reduced(h.stage(0, k));
    if (src.cols() != tgt.cols()) return failed(cert, {{"filtration0_degree", k}, {"reason", "ranks differ"}});
    if (src.cols() == 0) continue;
    auto coords = LatticeSolver(tgt).solve(m.component(k) * src);
    if (!coords || !is_unimodular(*coords))
      return failed(cert, {{"filtration0_degree", k}, {"reason", "not an isomorphism onto stage 0"}});
  }
  cert.details = {{"containment", table},
                  {"filtration0_isomorphism", true},
                  {"filtration0_degrees_compared", iso_degrees},
                  {"model", model == ChainModel::normalized ? "normalized" : "unnormalized"}};
  return cert;
}

Certificate day_unit_check(const FilteredChainComplex& f) {
  Certificate cert;
  cert.name = "day_unit";
  const auto u = FilteredChainComplex::unit();
  if (!stages_equal(day_convolution(f, u), f)) return failed(cert, {{"side", "right"}});
  if (!stages_equal(day_convolution(u, f), f)) return failed(cert, {{"side", "left"}});
  cert.details = {{"p_max", f.p_max()}};
  return cert;
}

Certificate day_symmetry_check(const FilteredChainComplex& f, const FilteredChainComplex& g) {
  Certificate cert;
  cert.name = "day_symmetry";
  if (!stages_equal(day_convolution(f, g), day_convolution(g, f), tensor_swap(f.ambient(), g.ambient())))
    return failed(cert, {{"reason", "swap does not carry stages onto stages"}});
  return cert;
}

Certificate day_associativity_check(const FilteredChainComplex& f, const FilteredChainComplex& g,
                                    const FilteredChainComplex& h) {
  Certificate cert;
  cert.name = "day_associativity";
  auto left = day_convolution(day_convolution(f, g), h);
  auto right = day_convolution(f, day_convolution(g, h));
  if (!stages_equal(left, right, tensor_associator(f.ambient(), g.ambient(), h.ambient())))
    return failed(cert, {{"reason", "associator does not carry stages onto stages"}});
  cert.details = {{"p_max", left.p_max()}};
  return cert;
}

}  // namespace zilber
