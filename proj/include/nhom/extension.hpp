#ifndef NHOM_EXTENSION_HPP
#define NHOM_EXTENSION_HPP

#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nhom/algebra.hpp"
#include "nhom/derivations.hpp"
#include "nhom/theorems.hpp"

namespace nhom {

/// The t-extension on Nt + Nt^n. Indices 0..d-1 hold the Nt block and
/// d..2d-1 the Nt^n block; a bracket is nonzero only when every argument
/// comes from Nt, and then lands in Nt^n.
struct TExtension {
  NHomAlgebra base;
  NHomAlgebra ext;
  GradedSubspace complement;  // U with N = U + [N,...,N]
  GradedSubspace derived;     // [N,...,N]
  Mat derived_projection;     // projection of N onto [N,...,N] along U

  std::size_t base_dim() const { return base.dim(); }
};

inline TExtension build_check(const NHomAlgebra& alg) {
  if (!validate(alg).ok()) throw std::invalid_argument("t-extension: source algebra does not validate");
  const std::size_t d = alg.dim();

  std::vector<int> parity = alg.parity();
  parity.insert(parity.end(), alg.parity().begin(), alg.parity().end());
  BracketTable table;
  for (const auto& [key, value] : alg.table()) {
    Vec shifted(2 * d);
    for (std::size_t l = 0; l < d; ++l) shifted[d + l] = value[l];
    table.emplace(key, std::move(shifted));
  }
  Mat alpha(2 * d, 2 * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      alpha(r, c) = alg.alpha()(r, c);
      alpha(d + r, d + c) = alg.alpha()(r, c);
    }
  NHomAlgebra ext(alg.arity(), std::move(parity), std::move(table), std::move(alpha));
  if (!validate(ext).ok()) throw std::runtime_error("t-extension failed axiom validation");

  GradedSubspace derived = derived_subspace(alg);
  GradedSubspace U{extend_to_complement(derived.even, alg.indices_of_parity(0)),
                   extend_to_complement(derived.odd, alg.indices_of_parity(1))};

  // Q = [U | B] in the standard basis; P_B = Q diag(0.., 1..) Q^-1
  Mat Q(d, d), mask(d, d);
  std::size_t col = 0;
  for (const auto* part : {&U.even, &U.odd, &derived.even, &derived.odd}) {
    const bool is_derived = part == &derived.even || part == &derived.odd;
    for (const auto& v : part->vectors()) {
      for (std::size_t r = 0; r < d; ++r) Q(r, col) = v[r];
      if (is_derived) mask(col, col) = 1;
      ++col;
    }
  }
  const auto Qinv = inverse(Q);
  if (!Qinv) throw std::logic_error("t-extension: complement does not span N");
  Mat projection = Q * mask * (*Qinv);

  return TExtension{alg, std::move(ext), std::move(U), std::move(derived), std::move(projection)};
}

/// phi(D)(a t + u t^n + b t^n) = D(a) t + D'(b) t^n for a QDer witness pair
/// (D, D') at level k. Throws std::invalid_argument if the pair is not one.
inline GradedEndo phi(const TExtension& ext, std::size_t k, const GradedEndo& D, const Mat& Dprime) {
  if (!satisfies_qder(ext.base, k, D, Dprime))
    throw std::invalid_argument("phi: (D, D') is not a quasiderivation witness pair");
  const std::size_t d = ext.base_dim();
  const Mat tail = Dprime * ext.derived_projection;
  Mat m(2 * d, 2 * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      m(r, c) = D.mat(r, c);
      m(d + r, d + c) = tail(r, c);
    }
  return {std::move(m), D.xi};
}

inline PropReport check_prop42(const NHomAlgebra& alg, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "4.2";
  rep.seed = opt.seed;
  const TExtension ext = build_check(alg);
  SpaceAtlas atlas(alg);
  std::mt19937_64 rng(opt.seed);
  const std::size_t d = alg.dim();

  detail::ClaimBuilder parity("4.2(1) phi preserves parity");
  detail::ClaimBuilder injective("4.2(2) phi injective");
  detail::ClaimBuilder independent("4.2(2) phi independent of the witness");
  detail::ClaimBuilder into_der("4.2(3) phi(QDer) in Der(ext)");

  for (std::size_t k = 0; k <= opt.kmax; ++k)
    for (int xi = 0; xi < 2; ++xi) {
      const auto& Q = atlas.get(Kind::QDer, k, xi);
      RowReducer images(4 * d * d);
      for (std::size_t i = 0; i < Q.dim(); ++i) {
        const auto& D = Q.basis[i];
        const GradedEndo P = phi(ext, k, D, Q.witnesses[i][0]);
        auto note = [&] {
          return Witness{"k=" + std::to_string(k) + " xi=" + std::to_string(xi) + " index=" + std::to_string(i), {D, P}};
        };
        parity.check(P.xi == D.xi && is_homogeneous(ext.ext, P.mat, xi), note);
        images.add(vectorize(P.mat));

        // second witness: membership solve, then a random shift along the witness freedom
        auto other = find_qder_witness(alg, k, D);
        bool same = other.has_value();
        if (other) {
          for (const auto& f : Q.witness_freedom) *other += f[0] * Scalar(static_cast<long>(rng() % 9) - 4);
          same = phi(ext, k, D, *other) == P;
        }
        independent.check(same, note);
        into_der.check(in_space(ext.ext, Kind::Der, k, xi, P), note);
      }
      injective.check(images.rank() == Q.dim(), [&] {
        return Witness{"k=" + std::to_string(k) + " xi=" + std::to_string(xi) + " rank=" +
                           std::to_string(images.rank()) + " dim QDer=" + std::to_string(Q.dim()),
                       {}};
      });
      rep.dims[{"phi(QDer)", k, xi}] = images.rank();
      rep.dims[{"QDer", k, xi}] = Q.dim();
    }
  rep.claims.push_back(parity.finish());
  rep.claims.push_back(injective.finish());
  rep.claims.push_back(independent.finish());
  rep.claims.push_back(into_der.finish());
  rep.sort_claims();
  return rep;
}

inline PropReport check_prop43(const NHomAlgebra& alg, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "4.3";
  const std::string zc = "4.3 Z(ext) = Nt^n";
  const std::string meet = "4.3 phi(QDer) meets ZDer(ext) trivially";
  const std::string sum = "4.3 phi(QDer) + ZDer(ext) = Der(ext)";
  if (center(alg).dim() != 0) {
    for (const auto& id : {zc, meet, sum}) rep.claims.push_back(detail::skipped(id, "Z(N) != {0}"));
    rep.sort_claims();
    return rep;
  }
  const TExtension ext = build_check(alg);
  const std::size_t d = alg.dim();
  SpaceAtlas base(alg), big(ext.ext);

  detail::ClaimBuilder zb(zc);
  std::vector<Vec> tn;
  for (std::size_t i = d; i < 2 * d; ++i) {
    Vec e(2 * d);
    e[i] = 1;
    tn.push_back(std::move(e));
  }
  zb.check(center(ext.ext).total() == SubspaceBasis::span(2 * d, tn), [] { return Witness{"center mismatch", {}}; });
  rep.claims.push_back(zb.finish());

  detail::ClaimBuilder mb(meet), sb(sum);
  for (std::size_t k = 0; k <= opt.kmax; ++k)
    for (int xi = 0; xi < 2; ++xi) {
      const auto& Q = base.get(Kind::QDer, k, xi);
      std::vector<Vec> imgs;
      for (std::size_t i = 0; i < Q.dim(); ++i) imgs.push_back(vectorize(phi(ext, k, Q.basis[i], Q.witnesses[i][0]).mat));
      const auto A = SubspaceBasis::span(4 * d * d, imgs);
      const auto& B = big.get(Kind::ZDer, k, xi).space;
      const auto& C = big.get(Kind::Der, k, xi).space;
      const auto inter = subspace_intersect(A, B);
      const auto total = subspace_sum(A, B);
      const std::string grade = "k=" + std::to_string(k) + " xi=" + std::to_string(xi);
      mb.check(inter.dim() == 0, [&] { return Witness{grade, detail::basis_of(inter, 2 * d, xi)}; });
      sb.check(total == C, [&] {
        return Witness{grade + " dim(A+B)=" + std::to_string(total.dim()) + " dim Der=" + std::to_string(C.dim()), {}};
      });
      rep.dims[{"phi(QDer)", k, xi}] = A.dim();
      rep.dims[{"ext.ZDer", k, xi}] = B.dim();
      rep.dims[{"ext.Der", k, xi}] = C.dim();
    }
  rep.claims.push_back(mb.finish());
  rep.claims.push_back(sb.finish());
  rep.sort_claims();
  return rep;
}

}  // namespace nhom

#endif  // NHOM_EXTENSION_HPP
