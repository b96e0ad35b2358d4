#ifndef NHOM_THEOREMS_HPP
#define NHOM_THEOREMS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nhom/algebra.hpp"
#include "nhom/derivations.hpp"
#include "nhom/endo.hpp"

namespace nhom {

enum class Status { Pass, Fail, Skipped };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct Witness {
  std::string note;
  std::vector<GradedEndo> maps;
};

struct Claim {
  std::string id;
  Status status = Status::Pass;
  std::size_t instances = 0;  // number of exact checks performed
  std::string detail;         // skip reason or predicate values
  std::vector<Witness> witnesses;
};

/// (space label, k, xi) -> dimension
using DimTable = std::map<std::tuple<std::string, std::size_t, int>, std::size_t>;

struct PropReport {
  std::string id;
  std::vector<Claim> claims;
  DimTable dims;
  std::optional<std::uint64_t> seed;

  bool passed() const {
    return std::none_of(claims.begin(), claims.end(), [](const Claim& c) { return c.status == Status::Fail; });
  }
  const Claim* find(std::string_view claim_id) const {
    for (const auto& c : claims)
      if (c.id == claim_id) return &c;
    return nullptr;
  }
  void sort_claims() {
    std::sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
  }
};

struct CheckOptions {
  std::size_t kmax = 2;
  std::uint64_t seed = 20161101;
  std::size_t samples = 32;
};

namespace detail {

constexpr std::size_t kMaxClaimWitnesses = 4;

/// Accumulates instance checks for one claim.
class ClaimBuilder {
 public:
  explicit ClaimBuilder(std::string id) { claim_.id = std::move(id); }

  void check(bool ok, const std::function<Witness()>& witness) {
    ++claim_.instances;
    if (ok) return;
    claim_.status = Status::Fail;
    if (claim_.witnesses.size() < kMaxClaimWitnesses) claim_.witnesses.push_back(witness());
  }

  Claim finish(std::string detail = {}) {
    claim_.detail = std::move(detail);
    return std::move(claim_);
  }

 private:
  Claim claim_;
};

inline Claim skipped(std::string id, std::string reason) {
  Claim c;
  c.id = std::move(id);
  c.status = Status::Skipped;
  c.detail = std::move(reason);
  return c;
}

inline std::string grade_note(std::size_t k, int xi, std::size_t s, int eta, std::size_t i, std::size_t j) {
  return "k=" + std::to_string(k) + " xi=" + std::to_string(xi) + " s=" + std::to_string(s) +
         " eta=" + std::to_string(eta) + " pair=(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// Runs f(D, E, k, xi, s, eta, i, j) over basis pairs of X_{k,xi} x Y_{s,eta}
/// for every grade with k + s <= kmax.
template <class F>
void for_each_pair(SpaceAtlas& atlas, Kind x, Kind y, std::size_t kmax, F&& f) {
  for (std::size_t k = 0; k <= kmax; ++k)
    for (std::size_t s = 0; k + s <= kmax; ++s)
      for (int xi = 0; xi < 2; ++xi)
        for (int eta = 0; eta < 2; ++eta) {
          const auto& A = atlas.get(x, k, xi);
          const auto& B = atlas.get(y, s, eta);
          for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < B.dim(); ++j) f(A.basis[i], B.basis[j], k, xi, s, eta, i, j);
        }
}

inline void fill_dims(SpaceAtlas& atlas, std::size_t kmax, DimTable& dims) {
  for (auto kind : kAllKinds)
    for (std::size_t k = 0; k <= kmax; ++k)
      for (int xi = 0; xi < 2; ++xi) dims[{std::string(to_string(kind)), k, xi}] = atlas.dim(kind, k, xi);
}

/// Claim: [X_k, Y_s] lands in Z_{k+s} (op = supercommutator or composition).
inline Claim closure_claim(SpaceAtlas& atlas, std::string id, Kind x, Kind y, Kind target, std::size_t kmax,
                           GradedEndo (*op)(const GradedEndo&, const GradedEndo&)) {
  ClaimBuilder cb(std::move(id));
  const auto& alg = atlas.algebra();
  for_each_pair(atlas, x, y, kmax,
                [&](const GradedEndo& D, const GradedEndo& E, std::size_t k, int xi, std::size_t s, int eta,
                    std::size_t i, std::size_t j) {
                  const GradedEndo R = op(D, E);
                  cb.check(in_space(alg, target, k + s, (xi + eta) & 1, R),
                           [&] { return Witness{grade_note(k, xi, s, eta, i, j), {D, E, R}}; });
                });
  return cb.finish();
}

/// Claim: twist(X_k) lands in X_{k+1}.
inline Claim twist_claim(SpaceAtlas& atlas, std::string id, Kind x, std::size_t kmax) {
  ClaimBuilder cb(std::move(id));
  const auto& alg = atlas.algebra();
  for (std::size_t k = 0; k + 1 <= kmax; ++k)
    for (int xi = 0; xi < 2; ++xi) {
      const auto& A = atlas.get(x, k, xi);
      for (std::size_t i = 0; i < A.dim(); ++i) {
        const GradedEndo T = alpha_twist(alg, A.basis[i]);
        cb.check(in_space(alg, x, k + 1, xi, T), [&] {
          return Witness{"k=" + std::to_string(k) + " xi=" + std::to_string(xi) + " index=" + std::to_string(i),
                         {A.basis[i], T}};
        });
      }
    }
  return cb.finish();
}

inline std::vector<GradedEndo> basis_of(const SubspaceBasis& space, std::size_t d, int xi) {
  std::vector<GradedEndo> out;
  for (const auto& v : space.vectors()) out.push_back({devectorize(v, d), xi});
  return out;
}

}  // namespace detail

/// Hom-subalgebra and Hom-ideal closure of the derivation-type spaces.
inline PropReport check_prop31(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "3.1";
  const auto K = opt.kmax;
  for (auto X : {Kind::GDer, Kind::QDer, Kind::C}) {
    const std::string name(to_string(X));
    rep.claims.push_back(
        detail::closure_claim(atlas, "3.1(1) [" + name + "," + name + "] in " + name, X, X, X, K, supercommutator));
    rep.claims.push_back(detail::twist_claim(atlas, "3.1(1) twist(" + name + ") in " + name, X, K));
  }
  rep.claims.push_back(
      detail::closure_claim(atlas, "3.1(2) [Der,ZDer] in ZDer", Kind::Der, Kind::ZDer, Kind::ZDer, K, supercommutator));
  rep.claims.push_back(detail::twist_claim(atlas, "3.1(2) twist(ZDer) in ZDer", Kind::ZDer, K));
  detail::fill_dims(atlas, K, rep.dims);
  rep.sort_claims();
  return rep;
}

inline PropReport check_prop32(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "3.2";
  const auto K = opt.kmax;
  const auto& alg = atlas.algebra();
  rep.claims.push_back(
      detail::closure_claim(atlas, "3.2(1) [Der,C] in C", Kind::Der, Kind::C, Kind::C, K, supercommutator));
  rep.claims.push_back(
      detail::closure_claim(atlas, "3.2(2) [QDer,QC] in QC", Kind::QDer, Kind::QC, Kind::QC, K, supercommutator));
  rep.claims.push_back(detail::closure_claim(atlas, "3.2(3) C.Der in Der", Kind::C, Kind::Der, Kind::Der, K, compose));

  detail::ClaimBuilder c_in_qder("3.2(4) C in QDer");
  detail::ClaimBuilder witness("3.2(4) witness D'=nD");
  const Scalar n(static_cast<long>(alg.arity()));
  for (std::size_t k = 0; k <= K; ++k)
    for (int xi = 0; xi < 2; ++xi) {
      const auto& C = atlas.get(Kind::C, k, xi);
      for (std::size_t i = 0; i < C.dim(); ++i) {
        const auto& D = C.basis[i];
        auto note = [&] {
          return Witness{"k=" + std::to_string(k) + " xi=" + std::to_string(xi) + " index=" + std::to_string(i), {D}};
        };
        c_in_qder.check(in_space(alg, Kind::QDer, k, xi, D), note);
        witness.check(satisfies_qder(alg, k, D, D.mat * n), note);
      }
    }
  rep.claims.push_back(c_in_qder.finish());
  rep.claims.push_back(witness.finish());

  rep.claims.push_back(
      detail::closure_claim(atlas, "3.2(5) [QC,QC] in QDer", Kind::QC, Kind::QC, Kind::QDer, K, supercommutator));

  detail::ClaimBuilder sum("3.2(6) QDer+QC in GDer");
  for (std::size_t k = 0; k <= K; ++k)
    for (int xi = 0; xi < 2; ++xi) {
      const auto total = subspace_sum(atlas.get(Kind::QDer, k, xi).space, atlas.get(Kind::QC, k, xi).space);
      const auto& G = atlas.get(Kind::GDer, k, xi);
      sum.check(is_subspace(total, G.space), [&] {
        return Witness{"k=" + std::to_string(k) + " xi=" + std::to_string(xi),
                       detail::basis_of(total, alg.dim(), xi)};
      });
    }
  rep.claims.push_back(sum.finish());
  detail::fill_dims(atlas, K, rep.dims);
  rep.sort_claims();
  return rep;
}

/// S = QC + [QC, QC] per grade, as vectorized subspaces.
inline std::map<std::pair<std::size_t, int>, SubspaceBasis> qc_closure_spaces(SpaceAtlas& atlas, std::size_t kmax) {
  std::map<std::pair<std::size_t, int>, RowReducer> acc;
  for (std::size_t k = 0; k <= kmax; ++k)
    for (int xi = 0; xi < 2; ++xi) acc.emplace(std::make_pair(k, xi), atlas.get(Kind::QC, k, xi).space.reducer());
  detail::for_each_pair(atlas, Kind::QC, Kind::QC, kmax,
                        [&](const GradedEndo& D, const GradedEndo& E, std::size_t k, int xi, std::size_t s, int eta,
                            std::size_t, std::size_t) {
                          acc.at({k + s, (xi + eta) & 1}).add(vectorize(supercommutator(D, E).mat));
                        });
  std::map<std::pair<std::size_t, int>, SubspaceBasis> out;
  for (auto& [grade, red] : acc) out.emplace(grade, SubspaceBasis::from_reducer(red));
  return out;
}

inline PropReport check_prop33(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "3.3";
  const auto K = opt.kmax;
  const std::size_t d = atlas.algebra().dim();
  const auto S = qc_closure_spaces(atlas, K);

  detail::ClaimBuilder in_gder("3.3 QC+[QC,QC] in GDer");
  for (const auto& [grade, space] : S) {
    in_gder.check(is_subspace(space, atlas.get(Kind::GDer, grade.first, grade.second).space), [&] {
      return Witness{"k=" + std::to_string(grade.first) + " xi=" + std::to_string(grade.second),
                     detail::basis_of(space, d, grade.second)};
    });
    rep.dims[{"QC+[QC,QC]", grade.first, grade.second}] = space.dim();
  }
  rep.claims.push_back(in_gder.finish());

  detail::ClaimBuilder closed("3.3 [S,S] in S");
  for (const auto& [ga, sa] : S)
    for (const auto& [gb, sb] : S) {
      if (ga.first + gb.first > K) continue;
      const auto& target = S.at({ga.first + gb.first, (ga.second + gb.second) & 1});
      const auto A = detail::basis_of(sa, d, ga.second);
      const auto B = detail::basis_of(sb, d, gb.second);
      for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) {
          const GradedEndo R = supercommutator(A[i], B[j]);
          closed.check(contains(target, vectorize(R.mat)), [&] {
            return Witness{detail::grade_note(ga.first, ga.second, gb.first, gb.second, i, j), {A[i], B[j], R}};
          });
        }
    }
  rep.claims.push_back(closed.finish());
  detail::fill_dims(atlas, K, rep.dims);
  rep.sort_claims();
  return rep;
}

inline PropReport check_prop34(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "3.4";
  const auto K = opt.kmax;
  const auto& alg = atlas.algebra();
  const std::string c1 = "3.4 [C,QC] maps into Z(N)";
  const std::string c2 = "3.4 Z(N)=0 implies [C,QC]=0";
  detail::fill_dims(atlas, K, rep.dims);
  if (!is_alpha_surjective(alg)) {
    rep.claims.push_back(detail::skipped(c1, "alpha is not surjective"));
    rep.claims.push_back(detail::skipped(c2, "alpha is not surjective"));
    rep.sort_claims();
    return rep;
  }
  const auto Z = center(alg);
  const auto Ztot = Z.total();
  detail::ClaimBuilder into(c1);
  detail::ClaimBuilder zero(c2);
  for (std::size_t k = 0; k <= K; ++k)
    for (std::size_t s = 0; s <= K; ++s)
      for (int xi = 0; xi < 2; ++xi)
        for (int eta = 0; eta < 2; ++eta) {
          const auto& C = atlas.get(Kind::C, k, xi);
          const auto& Q = atlas.get(Kind::QC, s, eta);
          for (std::size_t i = 0; i < C.dim(); ++i)
            for (std::size_t j = 0; j < Q.dim(); ++j) {
              const GradedEndo R = supercommutator(C.basis[i], Q.basis[j]);
              bool ok = true;
              for (std::size_t c = 0; c < alg.dim() && ok; ++c) ok = contains(Ztot, R.mat.col(c));
              auto w = [&] { return Witness{detail::grade_note(k, xi, s, eta, i, j), {C.basis[i], Q.basis[j], R}}; };
              into.check(ok, w);
              if (Z.dim() == 0) zero.check(R.mat.is_zero(), w);
            }
        }
  rep.claims.push_back(into.finish());
  rep.claims.push_back(Z.dim() == 0 ? zero.finish() : detail::skipped(c2, "Z(N) != {0}"));
  rep.sort_claims();
  return rep;
}

namespace detail {

/// Left side of the Super-Hom-Jordan identity on Omega with twist D -> D alpha.
inline Mat hom_jordan_residual(const NHomAlgebra& alg, const GradedEndo& x, const GradedEndo& y,
                               const GradedEndo& z, const GradedEndo& w) {
  auto tw = [&](const GradedEndo& a) { return alpha_twist(alg, a); };
  auto term = [&](const GradedEndo& a, const GradedEndo& b, const GradedEndo& c, unsigned e) {
    Mat m = hom_associator(alg, jordan_product(a, b), tw(w), tw(c)).mat;
    if (sign_pow(e) < 0) m *= Scalar(-1);
    return m;
  };
  const auto p = [](const GradedEndo& a) { return static_cast<unsigned>(a.xi); };
  Mat r = term(x, y, z, p(z) * (p(x) + p(w)));
  r += term(y, z, x, p(x) * (p(y) + p(w)));
  r += term(z, x, y, p(y) * (p(z) + p(w)));
  return r;
}

}  // namespace detail

inline PropReport check_prop38(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "3.8";
  rep.seed = opt.seed;
  const auto K = opt.kmax;
  const auto& alg = atlas.algebra();

  std::vector<GradedEndo> omega_basis;
  for (int xi = 0; xi < 2; ++xi)
    for (const auto& D : atlas.get(Kind::Omega, 0, xi).basis) omega_basis.push_back(D);
  const std::size_t m = omega_basis.size();

  std::mt19937_64 rng(opt.seed);
  auto sample = [&]() -> GradedEndo {
    const int xi = static_cast<int>(rng() % 2);
    const auto& B = atlas.get(Kind::Omega, 0, xi).basis;
    GradedEndo D{Mat(alg.dim(), alg.dim()), xi};
    for (const auto& b : B) D.mat += b.mat * Scalar(static_cast<long>(rng() % 7) - 3);
    return D;
  };

  detail::ClaimBuilder comm("3.8(1) supercommutativity of the Jordan product on Omega");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& a = omega_basis[i];
      const auto& b = omega_basis[j];
      const GradedEndo ab = jordan_product(a, b);
      GradedEndo ba = jordan_product(b, a);
      if (sign_pow(static_cast<unsigned>(a.xi * b.xi)) < 0) ba.mat *= Scalar(-1);
      comm.check(ab == ba, [&] { return Witness{"basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")", {a, b}}; });
    }
  rep.claims.push_back(comm.finish());

  detail::ClaimBuilder jordan("3.8(1) Super-Hom-Jordan identity on Omega");
  if (m > 0 && m * m * m <= 10000) {
    // the identity is linear in w; each basis triple is paired with a rotating basis w
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) {
          const auto& w = omega_basis[(i + j + l) % m];
          const Mat r = detail::hom_jordan_residual(alg, omega_basis[i], omega_basis[j], omega_basis[l], w);
          jordan.check(r.is_zero(), [&] {
            return Witness{"basis triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + ")",
                           {omega_basis[i], omega_basis[j], omega_basis[l], w}};
          });
        }
  }
  for (std::size_t t = 0; t < opt.samples && m > 0; ++t) {
    const auto x = sample(), y = sample(), z = sample(), w = sample();
    const Mat r = detail::hom_jordan_residual(alg, x, y, z, w);
    jordan.check(r.is_zero(), [&] { return Witness{"sample " + std::to_string(t), {x, y, z, w}}; });
  }
  rep.claims.push_back(jordan.finish());

  rep.claims.push_back(
      detail::closure_claim(atlas, "3.8(2) QC.QC in QC (Jordan product)", Kind::QC, Kind::QC, Kind::QC, K,
                            jordan_product));
  detail::fill_dims(atlas, K, rep.dims);
  rep.sort_claims();
  return rep;
}

inline PropReport check_prop39(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  PropReport rep;
  rep.id = "3.9";
  const auto K = opt.kmax;
  const auto& alg = atlas.algebra();
  bool p1 = true, p2 = true, p3 = true;
  std::size_t n = 0;
  detail::for_each_pair(atlas, Kind::QC, Kind::QC, K,
                        [&](const GradedEndo& D, const GradedEndo& E, std::size_t k, int xi, std::size_t s, int eta,
                            std::size_t, std::size_t) {
                          ++n;
                          const int g = (xi + eta) & 1;
                          const GradedEndo br = supercommutator(D, E);
                          p1 = p1 && in_space(alg, Kind::QC, k + s, g, br);
                          p2 = p2 && in_space(alg, Kind::QC, k + s, g, compose(D, E));
                          p3 = p3 && br.mat.is_zero();
                        });
  auto b = [](bool v) { return v ? std::string("true") : std::string("false"); };
  const std::string values = "P1(QC closed under [,])=" + b(p1) + " P2(QC closed under composition)=" + b(p2) +
                             " P3([QC,QC]=0)=" + b(p3);

  auto implication = [&](std::string id, bool holds) {
    Claim c;
    c.id = std::move(id);
    c.instances = n;
    c.status = holds ? Status::Pass : Status::Fail;
    c.detail = values;
    return c;
  };
  rep.claims.push_back(implication("3.9(1) P1 implies P2", !p1 || p2));
  rep.claims.push_back(implication("3.9(1) P2 implies P1", !p2 || p1));
  const std::string eq = "3.9(2) Z(N)=0: P1 iff P3";
  if (center(alg).dim() == 0)
    rep.claims.push_back(implication(eq, p1 == p3));
  else
    rep.claims.push_back(detail::skipped(eq, "Z(N) != {0}"));
  detail::fill_dims(atlas, K, rep.dims);
  rep.sort_claims();
  return rep;
}

/// Every proposition of the closure harness on one algebra.
inline std::vector<PropReport> check_all_props(SpaceAtlas& atlas, const CheckOptions& opt = {}) {
  return {check_prop31(atlas, opt), check_prop32(atlas, opt), check_prop33(atlas, opt),
          check_prop34(atlas, opt), check_prop38(atlas, opt), check_prop39(atlas, opt)};
}

/// Dimensions of every solved space, Z(N) and [N,...,N].
inline DimTable dimension_table(SpaceAtlas& atlas, std::size_t kmax) {
  DimTable t;
  detail::fill_dims(atlas, kmax, t);
  const auto z = center(atlas.algebra());
  const auto dv = derived_subspace(atlas.algebra());
  for (int p = 0; p < 2; ++p) {
    t[{"Z(N)", 0, p}] = z.part(p).dim();
    t[{"[N,...,N]", 0, p}] = dv.part(p).dim();
  }
  return t;
}

/// Transports the algebra through an even invertible P and compares every
/// solved dimension. Throws std::invalid_argument if P is singular or not even.
inline PropReport check_basis_change(const NHomAlgebra& alg, const Mat& P, const CheckOptions& opt = {}) {
  const NHomAlgebra moved = change_basis(alg, P);
  SpaceAtlas a(alg), b(moved);
  const auto before = dimension_table(a, opt.kmax);
  const auto after = dimension_table(b, opt.kmax);
  PropReport rep;
  rep.id = "basis-change";
  detail::ClaimBuilder cb("dimensions invariant under even basis change");
  for (const auto& [key, dim] : before) {
    cb.check(after.at(key) == dim, [&] {
      return Witness{std::get<0>(key) + " k=" + std::to_string(std::get<1>(key)) + " xi=" +
                         std::to_string(std::get<2>(key)) + " before=" + std::to_string(dim) +
                         " after=" + std::to_string(after.at(key)),
                     {GradedEndo{P, 0}}};
    });
  }
  rep.claims.push_back(cb.finish());
  rep.dims = before;
  return rep;
}

/// Random even invertible matrix with small integer entries.
inline Mat random_even_invertible(const NHomAlgebra& alg, std::mt19937_64& rng) {
  const std::size_t d = alg.dim();
  while (true) {
    Mat P(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (alg.parity(r) == alg.parity(c)) P(r, c) = static_cast<long>(rng() % 5) - 2;
    if (rank(P) == d) return P;
  }
}

}  // namespace nhom

#endif  // NHOM_THEOREMS_HPP
