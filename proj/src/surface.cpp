#include <swlat/surface.hpp>

#include <numeric>

namespace swlat {

Int SurfaceModel::canonical_fiber_degree() const {
  if (!is_elliptic()) throw std::invalid_argument("canonical_fiber_degree: elliptic models only");
  return Int(pg + 1) * m1 * m2 - m1 - m2;
}

void SurfaceModel::validate() const {
  if (blowups < 0) throw std::invalid_argument("blowup count must be nonnegative");
  if (pg < 0 || q < 0) throw std::invalid_argument("pg and q must be nonnegative");
  if (is_general_type()) {
    if (ksq < 1 || ksq > 9) throw UnsupportedModel("general type: K0^2 must be between 1 and 9");
    if (pg != 0 || q != 0) throw UnsupportedModel("general type: only pg = q = 0 is supported");
  } else {
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("multiplicities must be positive");
    if (q != 0) throw UnsupportedModel("elliptic: only q = 0 (simply connected case) is supported");
    if (std::gcd(m1, m2) != 1)
      throw UnsupportedModel("elliptic: multiple-fiber multiplicities must be coprime");
    if (canonical_fiber_degree() < 0)
      throw UnsupportedModel("elliptic: canonical degree negative (rational or ruled surface)");
  }
}

ClassVector SurfaceLattice::K_tilde() const {
  ClassVector k = K0;
  for (const auto& e : exceptionals) k = k + e;
  return k;
}

Int SurfaceLattice::K_tilde_square() const { return space.square(K_tilde()); }

namespace {

ClassVector unit_vector(int rank, int i) {
  std::vector<Int> c(rank, Int(0));
  c[i] = 1;
  return ClassVector(std::move(c));
}

}  // namespace

SurfaceLattice build(const SurfaceModel& model) {
  model.validate();
  int l = model.blowups;
  if (model.is_general_type()) {
    int free_rank = 10 - model.ksq;  // <1> + <-1>^(9-ksq)
    int rank = free_rank + l;
    GramMatrix gram(rank, std::vector<Int>(rank, Int(0)));
    gram[0][0] = 1;
    for (int i = 1; i < rank; ++i) gram[i][i] = -1;
    std::vector<Int> k0(rank, Int(0));
    k0[0] = 3;
    for (int i = 1; i < free_rank; ++i) k0[i] = 1;
    std::vector<ClassVector> es;
    for (int i = 0; i < l; ++i) es.push_back(unit_vector(rank, free_rank + i));
    SurfaceLattice out{LatticeSpace::checked(std::move(gram)), ClassVector(std::move(k0)),
                       std::move(es), model};
    return out;
  }

  Int d0 = model.canonical_fiber_degree();
  int parity = static_cast<int>(d0 % 2);  // d0 >= 0 here
  int rank = 2 + l;
  GramMatrix gram(rank, std::vector<Int>(rank, Int(0)));
  gram[0][1] = gram[1][0] = 1;
  gram[1][1] = parity;
  for (int i = 2; i < rank; ++i) gram[i][i] = -1;
  std::vector<ClassVector> es;
  for (int i = 0; i < l; ++i) es.push_back(unit_vector(rank, 2 + i));
  ClassVector t = unit_vector(rank, 0);
  SurfaceLattice out{LatticeSpace::checked(std::move(gram)), t * d0, std::move(es), model};
  out.elliptic = true;
  out.t = t;
  out.f = t * (Int(model.m1) * model.m2);
  out.F1 = t * Int(model.m2);
  out.F2 = t * Int(model.m1);
  return out;
}

SurfaceLattice build_override(const SurfaceModel& model, GramMatrix gram, ClassVector K0,
                              std::vector<ClassVector> exceptionals) {
  model.validate();
  if (!model.is_general_type())
    throw UnsupportedModel("explicit lattice presentations are supported for general type only");
  if (static_cast<int>(exceptionals.size()) != model.blowups)
    throw std::invalid_argument("override: exceptional class count must equal the blowup count");
  LatticeSpace space = LatticeSpace::checked(std::move(gram));
  if (K0.rank() != space.rank()) throw std::invalid_argument("override: K0 dimension mismatch");
  if (space.square(K0) != model.ksq)
    throw std::invalid_argument("override: K0 square does not match the model");
  for (size_t i = 0; i < exceptionals.size(); ++i) {
    const auto& e = exceptionals[i];
    if (space.square(e) != -1) throw std::invalid_argument("override: exceptional class must have square -1");
    if (space.pairing(K0, e) != 0)
      throw std::invalid_argument("override: exceptional class must be orthogonal to K0");
    for (size_t j = 0; j < i; ++j)
      if (space.pairing(exceptionals[j], e) != 0)
        throw std::invalid_argument("override: exceptional classes must be pairwise orthogonal");
  }
  SurfaceLattice out{std::move(space), std::move(K0), std::move(exceptionals), model};
  if (!out.space.is_characteristic(out.K_tilde()))
    throw std::invalid_argument("override: K0 + sum(Ei) must be characteristic");
  return out;
}

Int chi_O(const SurfaceModel& model) { return Int(1) - model.q + model.pg; }

Int plurigenus(const SurfaceModel& model, int n) {
  if (n < 2) throw std::invalid_argument("plurigenus: n must be at least 2");
  if (!model.is_general_type())
    throw UnsupportedModel("plurigenus formula applies to general-type models only");
  return Int(n) * (n - 1) / 2 * model.ksq + chi_O(model);
}

Rat fiber_degree(const SurfaceLattice& surface, const ClassVector& d) {
  if (!surface.elliptic) throw std::invalid_argument("fiber_degree: elliptic lattices only");
  if (d.rank() != surface.space.rank()) throw std::invalid_argument("fiber_degree: dimension mismatch");
  for (int i = 1; i < d.rank(); ++i)
    if (d[i] != 0) throw std::invalid_argument("fiber_degree: class is not proportional to the fiber direction");
  return Rat(d[0], Int(surface.model.m1) * surface.model.m2);
}

bool effective_fiber_class(int m1, int m2, const Int& sigma) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("multiplicities must be positive");
  if (sigma < 0) return false;
  for (Int y = 0; y < m2 && y * m1 <= sigma; ++y)
    if ((sigma - y * m1) % m2 == 0) return true;
  return false;
}

}  // namespace swlat
