#include <swlat/lattice.hpp>

#include <algorithm>
#include <sstream>

namespace swlat {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------- vectors

ClassVector ClassVector::operator+(const ClassVector& o) const {
  require(rank() == o.rank(), "vector addition: dimension mismatch");
  std::vector<Int> r(c_);
  for (int i = 0; i < rank(); ++i) r[i] += o.c_[i];
  return ClassVector(std::move(r));
}

ClassVector ClassVector::operator-(const ClassVector& o) const {
  require(rank() == o.rank(), "vector subtraction: dimension mismatch");
  std::vector<Int> r(c_);
  for (int i = 0; i < rank(); ++i) r[i] -= o.c_[i];
  return ClassVector(std::move(r));
}

ClassVector ClassVector::operator-() const {
  std::vector<Int> r(c_);
  for (Int& x : r) x = -x;
  return ClassVector(std::move(r));
}

ClassVector ClassVector::operator*(const Int& k) const {
  std::vector<Int> r(c_);
  for (Int& x : r) x *= k;
  return ClassVector(std::move(r));
}

bool ClassVector::operator<(const ClassVector& o) const {
  require(rank() == o.rank(), "vector comparison: dimension mismatch");
  for (int i = 0; i < rank(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

ClassVector ClassVector::divided_by(const Int& k) const {
  require(k != 0, "division by zero");
  std::vector<Int> r(c_);
  for (Int& x : r) {
    require(x % k == 0, "vector not divisible by scalar");
    x /= k;
  }
  return ClassVector(std::move(r));
}

ClassVector ClassVector::lex_positive() const {
  for (const Int& x : c_) {
    if (x > 0) return *this;
    if (x < 0) return -*this;
  }
  return *this;
}

std::string ClassVector::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < rank(); ++i) os << (i ? ", " : "") << c_[i];
  os << ")";
  return os.str();
}

RationalVector::RationalVector(const ClassVector& v) {
  c_.reserve(v.rank());
  for (int i = 0; i < v.rank(); ++i) c_.emplace_back(v[i]);
}

RationalVector RationalVector::operator+(const RationalVector& o) const {
  require(rank() == o.rank(), "vector addition: dimension mismatch");
  std::vector<Rat> r(c_);
  for (int i = 0; i < rank(); ++i) r[i] += o.c_[i];
  return RationalVector(std::move(r));
}

RationalVector RationalVector::operator-(const RationalVector& o) const {
  require(rank() == o.rank(), "vector subtraction: dimension mismatch");
  std::vector<Rat> r(c_);
  for (int i = 0; i < rank(); ++i) r[i] -= o.c_[i];
  return RationalVector(std::move(r));
}

RationalVector RationalVector::operator-() const {
  std::vector<Rat> r(c_);
  for (Rat& x : r) x = -x;
  return RationalVector(std::move(r));
}

RationalVector RationalVector::operator*(const Rat& k) const {
  std::vector<Rat> r(c_);
  for (Rat& x : r) x *= k;
  return RationalVector(std::move(r));
}

ClassVector RationalVector::scaled_to_integer() const {
  Int lcm = 1;
  for (const Rat& x : c_) {
    Int d = rat_den(x);
    lcm = boost::multiprecision::lcm(lcm, d);
  }
  std::vector<Int> r;
  r.reserve(c_.size());
  Int gcd = 0;
  for (const Rat& x : c_) {
    Rat scaled = x * lcm;
    r.push_back(rat_num(scaled));
    gcd = boost::multiprecision::gcd(gcd, r.back());
  }
  if (gcd > 1)
    for (Int& x : r) x /= gcd;
  return ClassVector(std::move(r));
}

std::string RationalVector::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < rank(); ++i) os << (i ? ", " : "") << c_[i];
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------- LatticeSpace

LatticeSpace::LatticeSpace(GramMatrix gram, bool validate) : gram_(std::move(gram)) {
  rank_ = static_cast<int>(gram_.size());
  require(rank_ >= 1, "lattice rank must be >= 1");
  for (const auto& row : gram_) require(static_cast<int>(row.size()) == rank_, "gram matrix must be square");
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < i; ++j) require(gram_[i][j] == gram_[j][i], "gram matrix must be symmetric");
  if (validate) {
    Int det = determinant_of(gram_);
    require(det == 1 || det == -1, "lattice must be unimodular");
    auto [pos, neg, zero] = signature_of(gram_);
    require(pos == 1 && neg == rank_ - 1 && zero == 0, "lattice must have signature (1, rank-1)");
  }

  // Characteristic parity class: solve G v = diag(G) over GF(2).
  std::vector<std::vector<int>> a(rank_, std::vector<int>(rank_ + 1, 0));
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) a[i][j] = static_cast<int>(((gram_[i][j] % 2) + 2) % 2);
    a[i][rank_] = static_cast<int>(((gram_[i][i] % 2) + 2) % 2);
  }
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < rank_ && row < rank_; ++col) {
    int p = -1;
    for (int i = row; i < rank_; ++i)
      if (a[i][col]) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    for (int i = 0; i < rank_; ++i)
      if (i != row && a[i][col])
        for (int j = col; j <= rank_; ++j) a[i][j] ^= a[row][j];
    pivot_col.push_back(col);
    ++row;
  }
  bool unique = (row == rank_);
  bool consistent = true;
  for (int i = row; i < rank_; ++i)
    if (a[i][rank_]) consistent = false;
  if (unique && consistent) {
    std::vector<int> parity(rank_, 0);
    for (int i = 0; i < row; ++i) parity[pivot_col[i]] = a[i][rank_];
    char_parity_ = std::move(parity);
  }
}

LatticeSpace LatticeSpace::checked(GramMatrix gram) { return LatticeSpace(std::move(gram), true); }
LatticeSpace LatticeSpace::unchecked(GramMatrix gram) { return LatticeSpace(std::move(gram), false); }

void LatticeSpace::check_vector(const ClassVector& v) const {
  require(v.rank() == rank_, "vector does not live in this lattice (dimension mismatch)");
}
void LatticeSpace::check_vector(const RationalVector& v) const {
  require(v.rank() == rank_, "vector does not live in this lattice (dimension mismatch)");
}

Int LatticeSpace::pairing(const ClassVector& v, const ClassVector& w) const {
  check_vector(v);
  check_vector(w);
  Int acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (v[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < rank_; ++j)
      if (w[j] != 0) row += gram_[i][j] * w[j];
    acc += v[i] * row;
  }
  return acc;
}

Rat LatticeSpace::pairing(const ClassVector& v, const RationalVector& w) const {
  check_vector(v);
  check_vector(w);
  Rat acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (v[i] == 0) continue;
    Rat row = 0;
    for (int j = 0; j < rank_; ++j) row += Rat(gram_[i][j]) * w[j];
    acc += Rat(v[i]) * row;
  }
  return acc;
}

Rat LatticeSpace::pairing(const RationalVector& v, const RationalVector& w) const {
  check_vector(v);
  check_vector(w);
  Rat acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (v[i] == 0) continue;
    Rat row = 0;
    for (int j = 0; j < rank_; ++j) row += Rat(gram_[i][j]) * w[j];
    acc += v[i] * row;
  }
  return acc;
}

bool LatticeSpace::is_characteristic(const ClassVector& v) const {
  check_vector(v);
  for (int i = 0; i < rank_; ++i) {
    Int dot = 0;
    for (int j = 0; j < rank_; ++j) dot += gram_[i][j] * v[j];
    if (((dot - gram_[i][i]) % 2) != 0) return false;
  }
  return true;
}

ClassVector LatticeSpace::reflect(const ClassVector& v, const ClassVector& n) const {
  require(square(n) == -1, "reflection class must have square -1");
  return v + n * (pairing(v, n) * 2);
}

RationalVector LatticeSpace::reflect(const RationalVector& v, const ClassVector& n) const {
  require(square(n) == -1, "reflection class must have square -1");
  Rat k = pairing(n, v) * 2;
  return v + RationalVector(n) * k;
}

bool LatticeSpace::is_isometry(const IntMatrix& m) const {
  if (static_cast<int>(m.size()) != rank_) return false;
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != rank_) return false;
  // (M^T G M)[a][b] = sum_{i,j} M[i][a] G[i][j] M[j][b]
  for (int a = 0; a < rank_; ++a) {
    for (int b = 0; b < rank_; ++b) {
      Int acc = 0;
      for (int i = 0; i < rank_; ++i) {
        if (m[i][a] == 0) continue;
        Int row = 0;
        for (int j = 0; j < rank_; ++j) row += gram_[i][j] * m[j][b];
        acc += m[i][a] * row;
      }
      if (acc != gram_[a][b]) return false;
    }
  }
  return true;
}

ClassVector LatticeSpace::apply(const IntMatrix& m, const ClassVector& v) const {
  check_vector(v);
  require(static_cast<int>(m.size()) == rank_, "matrix dimension mismatch");
  std::vector<Int> r(rank_, Int(0));
  for (int i = 0; i < rank_; ++i) {
    require(static_cast<int>(m[i].size()) == rank_, "matrix dimension mismatch");
    for (int j = 0; j < rank_; ++j)
      if (v[j] != 0) r[i] += m[i][j] * v[j];
  }
  return ClassVector(std::move(r));
}

Int LatticeSpace::determinant_of(const GramMatrix& gram) {
  int n = static_cast<int>(gram.size());
  IntMatrix m = gram;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::tuple<int, int, int> LatticeSpace::signature_of(const GramMatrix& gram) {
  int n = static_cast<int>(gram.size());
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rat(gram[i][j]);
  int pos = 0, neg = 0, zero = 0;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      int swap_j = -1, add_j = -1;
      for (int j = k + 1; j < n; ++j) {
        if (a[j][j] != 0 && swap_j < 0) swap_j = j;
        if (a[k][j] != 0 && add_j < 0) add_j = j;
      }
      if (swap_j >= 0) {
        for (int i = 0; i < n; ++i) std::swap(a[i][k], a[i][swap_j]);
        std::swap(a[k], a[swap_j]);
      } else if (add_j >= 0) {
        // Remaining diagonal is zero; a[k][add_j] != 0 makes the new pivot 2*a[k][add_j].
        for (int i = 0; i < n; ++i) a[i][k] += a[i][add_j];
        for (int j = 0; j < n; ++j) a[k][j] += a[add_j][j];
      } else {
        ++zero;
        continue;
      }
    }
    Rat pivot = a[k][k];
    if (pivot > 0)
      ++pos;
    else
      ++neg;
    for (int i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / pivot;
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (int j = 0; j < n; ++j) a[j][i] = a[i][j];  // keep symmetry
    }
  }
  return {pos, neg, zero};
}

// ------------------------------------------------------- enumeration kernel

namespace {

struct EnumContext {
  int n;
  const LatticeSpace* space;
  std::vector<std::vector<Rat>> u;  // completed-square coefficients, j > i
  std::vector<Rat> d;               // positive pivots
  Rat budget;                       // total allowance for the companion form
  Int target_square;
  const RationalVector* anchor;
  Rat pairing_bound;
  bool characteristic_only;
  const std::vector<int>* parity;  // per-coordinate parity when enforced
  std::vector<Int> x;
  std::vector<ClassVector>* out;
};

void enumerate_level(EnumContext& ctx, int level, const Rat& remaining) {
  if (level < 0) {
    ClassVector v(ctx.x);
    if (ctx.space->square(v) != ctx.target_square) return;
    Rat p = ctx.space->pairing(v, *ctx.anchor);
    if (p < 0) p = -p;
    if (p > ctx.pairing_bound) return;
    if (ctx.characteristic_only && !ctx.parity && !ctx.space->is_characteristic(v)) return;
    ctx.out->push_back(std::move(v));
    return;
  }
  Rat c = 0;
  for (int j = level + 1; j < ctx.n; ++j) c += ctx.u[level][j] * Rat(ctx.x[j]);
  Rat t = remaining / ctx.d[level];
  Int u_int = ceil_sqrt(t);
  Int lo = ceil_rat(-c) - u_int;
  Int hi = floor_rat(-c) + u_int;
  while (lo <= hi && ctx.d[level] * (Rat(lo) + c) * (Rat(lo) + c) > remaining) ++lo;
  while (lo <= hi && ctx.d[level] * (Rat(hi) + c) * (Rat(hi) + c) > remaining) --hi;
  Int step = 1;
  if (ctx.characteristic_only && ctx.parity) {
    Int want = (*ctx.parity)[level];
    Int adjust = ((want - lo) % 2 + 2) % 2;
    lo += adjust;
    step = 2;
  }
  for (Int v = lo; v <= hi; v += step) {
    Rat term = ctx.d[level] * (Rat(v) + c) * (Rat(v) + c);
    if (term > remaining) continue;
    ctx.x[level] = v;
    enumerate_level(ctx, level - 1, remaining - term);
  }
  ctx.x[level] = 0;
}

}  // namespace

std::vector<ClassVector> LatticeSpace::enumerate_with_square(const Int& s, const RationalVector& anchor,
                                                             const Rat& pairing_bound,
                                                             bool characteristic_only) const {
  check_vector(anchor);
  Rat a2 = square(anchor);
  require(a2 > 0, "enumeration anchor must have positive square");
  if (pairing_bound < 0) return {};

  // Companion form P(x) = 2(x.a)^2/a^2 - x^2 is positive definite on a
  // signature-(1, n-1) lattice; on the constraint set it is bounded by C.
  Rat C = Rat(2) * pairing_bound * pairing_bound / a2 - Rat(s);
  if (C < 0) return {};

  std::vector<Rat> ga(rank_, Rat(0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) ga[i] += Rat(gram_[i][j]) * anchor[j];

  std::vector<std::vector<Rat>> p(rank_, std::vector<Rat>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) p[i][j] = Rat(2) * ga[i] * ga[j] / a2 - Rat(gram_[i][j]);

  // Exact LDL^T: P(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
  std::vector<Rat> d(rank_);
  std::vector<std::vector<Rat>> u(rank_, std::vector<Rat>(rank_, Rat(0)));
  for (int i = 0; i < rank_; ++i) {
    d[i] = p[i][i];
    require(d[i] > 0, "enumeration companion form is not positive definite (lattice not signature (1, n-1)?)");
    for (int j = i + 1; j < rank_; ++j) u[i][j] = p[i][j] / d[i];
    for (int k = i + 1; k < rank_; ++k)
      for (int j = k; j < rank_; ++j) {
        p[k][j] -= d[i] * u[i][k] * u[i][j];
        p[j][k] = p[k][j];
      }
  }

  std::vector<ClassVector> out;
  EnumContext ctx{rank_,
                  this,
                  std::move(u),
                  std::move(d),
                  C,
                  s,
                  &anchor,
                  pairing_bound,
                  characteristic_only,
                  characteristic_only && char_parity_ ? &*char_parity_ : nullptr,
                  std::vector<Int>(rank_, Int(0)),
                  &out};
  enumerate_level(ctx, rank_ - 1, C);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void box_search(const LatticeSpace& space, const ClassVector& v, const Int& radius, int level,
                std::vector<Int>& x, std::vector<ClassVector>& out) {
  if (level < 0) {
    ClassVector w(x);
    if (space.pairing(v, w) == 0 && space.square(w) > 0) out.push_back(std::move(w));
    return;
  }
  for (Int c = -radius; c <= radius; ++c) {
    x[level] = c;
    box_search(space, v, radius, level - 1, x, out);
  }
  x[level] = 0;
}

}  // namespace

std::vector<ClassVector> LatticeSpace::hodge_index_violations(const ClassVector& v, const Int& radius) const {
  check_vector(v);
  require(radius >= 0, "radius must be nonnegative");
  std::vector<Int> x(rank_, Int(0));
  std::vector<ClassVector> out;
  box_search(*this, v, radius, rank_ - 1, x, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace swlat
