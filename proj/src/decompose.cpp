#include "arq/decompose.hpp"

#include <algorithm>
#include <cassert>

namespace arq {

namespace {

// A Fitting splitter: an endomorphism f with 0 < rank(f^N) < dim, N large
// enough that image(f^N) and kernel(f^N) are complementary subreps.
std::optional<RepMorphism> fitting_splitter(const Rep& m, const RepMorphism& f) {
  size_t nv = m.quiver()->num_vertices();
  size_t exponent = 0;
  for (size_t x = 0; x < nv; ++x) exponent = std::max(exponent, m.dim(x));
  if (exponent == 0) return std::nullopt;
  std::vector<Matrix> comps;
  for (size_t x = 0; x < nv; ++x) comps.push_back(f.comp(x).pow(exponent));
  RepMorphism fn(m, m, std::move(comps));
  size_t r = 0;
  for (size_t x = 0; x < nv; ++x) r += rank(fn.comp(x));
  if (r == 0 || r == m.total_dim()) return std::nullopt;
  return fn;
}

// Search End(m) for a Fitting splitter. Returns the stabilized power f^N
// when found. `certified` records whether absence of a splitter was
// established by full enumeration.
std::optional<RepMorphism> find_splitter(const Rep& m, const HomSpace& end,
                                         const DecomposeConfig& cfg, bool* certified) {
  *certified = true;
  uint32_t p = m.modulus();
  uint64_t count = 1;
  bool exhaustive = true;
  for (size_t i = 0; i < end.dim(); ++i) {
    count *= p;
    if (count > cfg.exhaustive_cap) {
      exhaustive = false;
      break;
    }
  }
  if (exhaustive) {
    std::vector<uint32_t> digits(end.dim(), 0);
    for (uint64_t k = 0; k < count; ++k) {
      Matrix coords(end.dim(), 1, p);
      for (size_t i = 0; i < end.dim(); ++i) coords.set(i, 0, digits[i]);
      RepMorphism f = end.from_coords(coords);
      if (auto s = fitting_splitter(m, f)) return s;
      for (size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
    }
    return std::nullopt;
  }
  // Sampled fallback; declared by the certified flag.
  *certified = false;
  std::mt19937_64 rng(cfg.seed ^ (m.total_dim() * 0x9e3779b97f4a7c15ull));
  for (size_t i = 0; i < end.dim(); ++i) {
    if (auto s = fitting_splitter(m, end.basis[i])) return s;
  }
  for (size_t k = 0; k < cfg.sample_count; ++k) {
    RepMorphism f = random_hom(end, rng);
    if (auto s = fitting_splitter(m, f)) return s;
  }
  return std::nullopt;
}

void decompose_into(const Rep& m, const RepMorphism& incl_to_root,
                    const RepMorphism& proj_from_root, const DecomposeConfig& cfg,
                    Decomposition* out) {
  if (m.is_zero_rep()) return;
  HomSpace end = hom_space(m, m);
  bool certified = true;
  auto splitter = find_splitter(m, end, cfg, &certified);
  if (!splitter) {
    out->certified = out->certified && certified;
    out->parts.push_back({m, incl_to_root, proj_from_root});
    return;
  }
  // m = image(f^N) (+) kernel(f^N), both closed under the structure maps.
  size_t nv = m.quiver()->num_vertices();
  std::vector<Matrix> im_bases, ker_bases;
  for (size_t x = 0; x < nv; ++x) {
    im_bases.push_back(image(splitter->comp(x)));
    ker_bases.push_back(nullspace(splitter->comp(x)));
  }
  SubRep im = sub_rep(m, im_bases);
  SubRep ker = sub_rep(m, ker_bases);
  assert(im.sub.total_dim() + ker.sub.total_dim() == m.total_dim());
  // Projections: coordinates in the combined basis [im | ker].
  std::vector<Matrix> im_proj(nv), ker_proj(nv);
  uint32_t p = m.modulus();
  for (size_t x = 0; x < nv; ++x) {
    Matrix combined = im_bases[x].hstack(ker_bases[x]);
    auto inv = solve(combined, Matrix::identity(m.dim(x), p));
    if (!inv) throw PreconditionError("decompose: Fitting subspaces not complementary");
    im_proj[x] = inv->block(0, 0, im_bases[x].cols(), m.dim(x));
    ker_proj[x] = inv->block(im_bases[x].cols(), 0, ker_bases[x].cols(), m.dim(x));
  }
  RepMorphism pi_im(m, im.sub, std::move(im_proj));
  RepMorphism pi_ker(m, ker.sub, std::move(ker_proj));
  decompose_into(im.sub, compose(incl_to_root, im.inclusion),
                 compose(pi_im, proj_from_root), cfg, out);
  decompose_into(ker.sub, compose(incl_to_root, ker.inclusion),
                 compose(pi_ker, proj_from_root), cfg, out);
}

}  // namespace

Decomposition decompose(const Rep& m, const DecomposeConfig& cfg) {
  Decomposition out;
  RepMorphism id = RepMorphism::identity(m);
  decompose_into(m, id, id, cfg, &out);
  return out;
}

bool is_indecomposable(const Rep& m, const DecomposeConfig& cfg) {
  if (m.is_zero_rep())
    throw PreconditionError("is_indecomposable: zero representation");
  HomSpace end = hom_space(m, m);
  bool certified = true;
  return !find_splitter(m, end, cfg, &certified).has_value();
}

std::optional<RepMorphism> find_iso(const Rep& m, const Rep& n, const DecomposeConfig& cfg) {
  if (*m.quiver() != *n.quiver() || m.modulus() != n.modulus()) return std::nullopt;
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.is_zero_rep()) return RepMorphism::zero(m, n);
  HomSpace h = hom_space(m, n);
  if (h.dim() == 0) return std::nullopt;
  uint32_t p = m.modulus();
  uint64_t count = 1;
  bool exhaustive = true;
  for (size_t i = 0; i < h.dim(); ++i) {
    count *= p;
    if (count > cfg.exhaustive_cap) {
      exhaustive = false;
      break;
    }
  }
  if (exhaustive) {
    std::vector<uint32_t> digits(h.dim(), 0);
    for (uint64_t k = 0; k < count; ++k) {
      Matrix coords(h.dim(), 1, p);
      for (size_t i = 0; i < h.dim(); ++i) coords.set(i, 0, digits[i]);
      RepMorphism f = h.from_coords(coords);
      if (f.is_iso()) return f;
      for (size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(cfg.seed ^ 0xabcdef12345ull);
  for (size_t k = 0; k < cfg.sample_count; ++k) {
    RepMorphism f = random_hom(h, rng);
    if (f.is_iso()) return f;
  }
  return std::nullopt;
}

bool is_isomorphic(const Rep& m, const Rep& n, const DecomposeConfig& cfg) {
  if (*m.quiver() != *n.quiver() || m.modulus() != n.modulus()) return false;
  if (m.dims() != n.dims()) return false;
  if (m.is_zero_rep()) return true;
  Decomposition dm = decompose(m, cfg);
  Decomposition dn = decompose(n, cfg);
  if (dm.parts.size() != dn.parts.size()) return false;
  std::vector<bool> used(dn.parts.size(), false);
  for (const SummandPart& pm : dm.parts) {
    bool matched = false;
    for (size_t j = 0; j < dn.parts.size(); ++j) {
      if (used[j]) continue;
      if (find_iso(pm.piece, dn.parts[j].piece, cfg)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::vector<IsoClassCount> decompose_multiset(const Rep& m, const DecomposeConfig& cfg) {
  Decomposition d = decompose(m, cfg);
  std::vector<IsoClassCount> classes;
  for (const SummandPart& part : d.parts) {
    bool found = false;
    for (IsoClassCount& c : classes) {
      if (find_iso(part.piece, c.representative, cfg)) {
        ++c.multiplicity;
        found = true;
        break;
      }
    }
    if (!found) classes.push_back({part.piece, 1});
  }
  return classes;
}

bool has_summand(const Rep& m, const Rep& piece, const DecomposeConfig& cfg) {
  for (const SummandPart& part : decompose(m, cfg).parts)
    if (find_iso(part.piece, piece, cfg)) return true;
  return false;
}

bool is_summand_multiset(const Rep& sub, const Rep& whole, const DecomposeConfig& cfg) {
  if (sub.is_zero_rep()) return true;
  Decomposition ds = decompose(sub, cfg);
  Decomposition dw = decompose(whole, cfg);
  std::vector<bool> used(dw.parts.size(), false);
  for (const SummandPart& ps : ds.parts) {
    bool matched = false;
    for (size_t j = 0; j < dw.parts.size(); ++j) {
      if (used[j]) continue;
      if (find_iso(ps.piece, dw.parts[j].piece, cfg)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::vector<Rep> enumerate_indecomposables(QuiverPtr q, uint32_t p) {
  auto order = q->line_order();
  if (!order)
    throw PreconditionError(
        "enumerate_indecomposables: quiver is not a type-A line");
  const std::vector<int>& line = *order;
  size_t n = line.size();
  std::vector<Rep> result;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      // Interval [i, j] in line order: k at each covered vertex, identity on
      // the arrows with both endpoints covered.
      std::vector<size_t> dims(q->num_vertices(), 0);
      for (size_t k = i; k <= j; ++k) dims[q->vertex_index(line[k])] = 1;
      std::vector<Matrix> maps;
      for (size_t a = 0; a < q->num_arrows(); ++a) {
        size_t dx = dims[q->vertex_index(q->arrows()[a].src)];
        size_t dy = dims[q->vertex_index(q->arrows()[a].tgt)];
        Matrix m(dy, dx, p);
        if (dx == 1 && dy == 1) m.set(0, 0, 1);
        maps.push_back(std::move(m));
      }
      result.emplace_back(q, p, std::move(dims), std::move(maps));
    }
  }
  return result;
}

}  // namespace arq
