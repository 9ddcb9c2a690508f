#include "dd.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

#include "copoly/error.hpp"

namespace copoly::detail {

namespace {

struct Overflow {};

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t narrow(i128 v) {
  if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min()) throw Overflow{};
  return static_cast<int64_t>(v);
}

// Arithmetic used by the enumeration, specialised for checked machine
// integers and for GMP integers.
struct Checked64 {
  using Int = int64_t;
  static Int from(const mpz_class& v) {
    if (!v.fits_slong_p()) throw Overflow{};
    return v.get_si();
  }
  static mpz_class to_mpz(Int v) { return mpz_class(static_cast<long>(v)); }
  static int sign(Int v) { return (v > 0) - (v < 0); }
  static Int dot(const Int* h, const Int* r, size_t n) {
    i128 s = 0;
    for (size_t i = 0; i < n; ++i) {
      i128 t = static_cast<i128>(h[i]) * r[i];
      if (__builtin_add_overflow(s, t, &s)) throw Overflow{};
    }
    return narrow(s);
  }
  // out = a * x - b * y, divided by the gcd of its entries.
  static void combine(Int a, const Int* x, Int b, const Int* y, Int* out, size_t n, std::vector<i128>& tmp) {
    tmp.resize(n);
    i128 g = 0;
    for (size_t i = 0; i < n; ++i) {
      i128 u = static_cast<i128>(a) * x[i], v = static_cast<i128>(b) * y[i];
      if (__builtin_sub_overflow(u, v, &tmp[i])) throw Overflow{};
      g = gcd128(g, tmp[i]);
    }
    for (size_t i = 0; i < n; ++i) out[i] = narrow(g > 1 ? tmp[i] / g : tmp[i]);
  }
};

struct Gmp {
  using Int = mpz_class;
  static Int from(const mpz_class& v) { return v; }
  static mpz_class to_mpz(const Int& v) { return v; }
  static int sign(const Int& v) { return sgn(v); }
  static Int dot(const Int* h, const Int* r, size_t n) {
    mpz_class s = 0;
    for (size_t i = 0; i < n; ++i) mpz_addmul(s.get_mpz_t(), h[i].get_mpz_t(), r[i].get_mpz_t());
    return s;
  }
  static void combine(const Int& a, const Int* x, const Int& b, const Int* y, Int* out, size_t n, std::vector<i128>&) {
    mpz_class g = 0;
    for (size_t i = 0; i < n; ++i) {
      out[i] = a * x[i];
      mpz_submul(out[i].get_mpz_t(), b.get_mpz_t(), y[i].get_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
    }
    if (g > 1)
      for (size_t i = 0; i < n; ++i) mpz_divexact(out[i].get_mpz_t(), out[i].get_mpz_t(), g.get_mpz_t());
  }
};

template <size_t W>
struct Bits {
  std::array<uint64_t, W> w{};
  void set(size_t i) { w[i >> 6] |= uint64_t{1} << (i & 63); }
  bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (size_t i = 0; i < W; ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
};

// Exact rational inverse columns of a square integer matrix, scaled to
// primitive integer vectors: column j is orthogonal to every row but j.
std::vector<std::vector<mpz_class>> initial_rays(const std::vector<std::vector<mpz_class>>& rows) {
  size_t d = rows.size();
  std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(2 * d));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) a[i][j] = rows[i][j];
    a[i][d + i] = 1;
  }
  for (size_t c = 0; c < d; ++c) {
    size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    mpq_class inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (size_t i = 0; i < d; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = 0; j < 2 * d; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<mpz_class>> rays(d);
  for (size_t j = 0; j < d; ++j) {
    RatVec col(d);
    for (size_t i = 0; i < d; ++i) col[i] = Rational(a[i][d + j]);
    rays[j] = clear_denominators(col);
    make_primitive(rays[j]);
  }
  return rays;
}

template <class A, size_t W>
class DoubleDescription {
  using Int = typename A::Int;

 public:
  DoubleDescription(const std::vector<std::vector<mpz_class>>& rows, const std::vector<size_t>& order)
      : d_(rows[0].size()), rows_(rows.size()), order_(order) {
    for (size_t i = 0; i < rows.size(); ++i) {
      rows_[i].resize(d_);
      for (size_t j = 0; j < d_; ++j) rows_[i][j] = A::from(rows[i][j]);
    }
    src_ = rows;
  }

  std::vector<std::vector<mpz_class>> run() {
    start();
    for (size_t idx : rest_) insert(idx);
    std::vector<std::vector<mpz_class>> out(count());
    for (size_t r = 0; r < count(); ++r) {
      out[r].resize(d_);
      for (size_t j = 0; j < d_; ++j) out[r][j] = A::to_mpz(coords_[r * d_ + j]);
    }
    return out;
  }

 private:
  size_t count() const { return zeros_.size(); }

  void start() {
    // Greedy choice of d independent rows in insertion order.
    std::vector<std::vector<mpq_class>> echelon;
    std::vector<size_t> pivots;
    std::vector<size_t> chosen;
    for (size_t idx : order_) {
      std::vector<mpq_class> v(src_[idx].begin(), src_[idx].end());
      for (size_t e = 0; e < echelon.size(); ++e)
        if (v[pivots[e]] != 0) {
          mpq_class f = v[pivots[e]] / echelon[e][pivots[e]];
          for (size_t j = 0; j < d_; ++j) v[j] -= f * echelon[e][j];
        }
      size_t p = 0;
      while (p < d_ && v[p] == 0) ++p;
      if (p == d_ || chosen.size() == d_) {
        rest_.push_back(idx);
        continue;
      }
      echelon.push_back(std::move(v));
      pivots.push_back(p);
      chosen.push_back(idx);
    }
    if (chosen.size() < d_) throw Unbounded("polyhedron has a nontrivial lineality space");
    std::vector<std::vector<mpz_class>> sq;
    for (size_t idx : chosen) sq.push_back(src_[idx]);
    auto rays = initial_rays(sq);
    for (size_t j = 0; j < d_; ++j) {
      Bits<W> z;
      for (size_t k = 0; k < d_; ++k)
        if (k != j) z.set(chosen[k]);
      for (size_t t = 0; t < d_; ++t) coords_.push_back(A::from(rays[j][t]));
      zeros_.push_back(z);
    }
    processed_ = chosen;
  }

  void insert(size_t idx) {
    const size_t n = count();
    std::vector<Int> val(n);
    std::vector<size_t> pos, neg, zer;
    for (size_t r = 0; r < n; ++r) {
      val[r] = A::dot(rows_[idx].data(), &coords_[r * d_], d_);
      int s = A::sign(val[r]);
      (s > 0 ? pos : s < 0 ? neg : zer).push_back(r);
    }
    if (neg.empty()) {
      for (size_t r : zer) zeros_[r].set(idx);
      processed_.push_back(idx);
      return;
    }
    build_columns();
    std::vector<Int> next_coords;
    std::vector<Bits<W>> next_zeros;
    next_coords.reserve((pos.size() + zer.size()) * d_);
    for (size_t r : pos) keep(r, next_coords, next_zeros);
    for (size_t r : zer) {
      keep(r, next_coords, next_zeros);
      next_zeros.back().set(idx);
    }
    const int need = static_cast<int>(d_) - 2;
    std::vector<Int> fresh(d_);
    std::vector<i128> tmp;
    for (size_t p : pos)
      for (size_t q : neg) {
        Bits<W> z = zeros_[p] & zeros_[q];
        if (z.count() < need || !adjacent(z, p, q)) continue;
        // val[p] > 0 > val[q]: val[p] * ray_q - val[q] * ray_p lies on the hyperplane.
        A::combine(val[p], &coords_[q * d_], val[q], &coords_[p * d_], fresh.data(), d_, tmp);
        for (auto& x : fresh) next_coords.push_back(x);
        z.set(idx);
        next_zeros.push_back(z);
      }
    coords_ = std::move(next_coords);
    zeros_ = std::move(next_zeros);
    processed_.push_back(idx);
  }

  void keep(size_t r, std::vector<Int>& c, std::vector<Bits<W>>& z) const {
    for (size_t j = 0; j < d_; ++j) c.push_back(coords_[r * d_ + j]);
    z.push_back(zeros_[r]);
  }

  // Per processed row, the set of current rays lying on it.
  void build_columns() {
    words_ = (count() + 63) / 64;
    columns_.assign(rows_.size() * words_, 0);
    col_count_.assign(rows_.size(), 0);
    for (size_t r = 0; r < count(); ++r)
      for (size_t k : processed_)
        if (zeros_[r].test(k)) {
          columns_[k * words_ + (r >> 6)] |= uint64_t{1} << (r & 63);
          ++col_count_[k];
        }
  }

  // Combinatorial adjacency: no third ray has a zero set containing z.
  bool adjacent(const Bits<W>& z, size_t p, size_t q) {
    size_t first = SIZE_MAX;
    for (size_t k : processed_)
      if (z.test(k) && (first == SIZE_MAX || col_count_[k] < col_count_[first])) first = k;
    // empty z: every other ray contains it
    if (first == SIZE_MAX) return count() == 2;
    live_.clear();
    acc_.resize(words_);
    const uint64_t* c0 = &columns_[first * words_];
    for (size_t w = 0; w < words_; ++w) {
      uint64_t x = c0[w];
      if (w == (p >> 6)) x &= ~(uint64_t{1} << (p & 63));
      if (w == (q >> 6)) x &= ~(uint64_t{1} << (q & 63));
      if (x) {
        acc_[w] = x;
        live_.push_back(w);
      }
    }
    for (size_t k : processed_) {
      if (live_.empty()) return true;
      if (k == first || !z.test(k)) continue;
      const uint64_t* ck = &columns_[k * words_];
      size_t out = 0;
      for (size_t w : live_) {
        acc_[w] &= ck[w];
        if (acc_[w]) live_[out++] = w;
      }
      live_.resize(out);
    }
    return live_.empty();
  }

  size_t d_;
  std::vector<std::vector<Int>> rows_;
  std::vector<std::vector<mpz_class>> src_;
  std::vector<size_t> order_, rest_, processed_;
  std::vector<Int> coords_;
  std::vector<Bits<W>> zeros_;
  size_t words_ = 0;
  std::vector<uint64_t> columns_, acc_;
  std::vector<size_t> col_count_, live_;
};

template <size_t W>
std::vector<std::vector<mpz_class>> rays_with_width(const std::vector<std::vector<mpz_class>>& rows,
                                                    const std::vector<size_t>& order) {
  try {
    return DoubleDescription<Checked64, W>(rows, order).run();
  } catch (const Overflow&) {
    return DoubleDescription<Gmp, W>(rows, order).run();
  }
}

}  // namespace

std::vector<std::vector<mpq_class>> dd_vertices(const ReducedSystem& red, const std::vector<size_t>& order) {
  const size_t k = red.n(), m = red.a.size();
  // Row 0 is y0 >= 0; row i+1 is b_i y0 - a_i y >= 0.
  std::vector<std::vector<mpz_class>> rows(m + 1, std::vector<mpz_class>(k + 1));
  rows[0][0] = 1;
  for (size_t i = 0; i < m; ++i) {
    rows[i + 1][0] = red.b[i];
    for (size_t j = 0; j < k; ++j) rows[i + 1][j + 1] = -red.a[i][j];
  }
  std::vector<size_t> ord{0};
  for (size_t i : order) ord.push_back(i + 1);
  std::vector<std::vector<mpz_class>> rays;
  const size_t total = m + 1;
  if (total <= 64) rays = rays_with_width<1>(rows, ord);
  else if (total <= 128) rays = rays_with_width<2>(rows, ord);
  else if (total <= 256) rays = rays_with_width<4>(rows, ord);
  else if (total <= 512) rays = rays_with_width<8>(rows, ord);
  else if (total <= 1024) rays = rays_with_width<16>(rows, ord);
  else throw UnsupportedSize("vertex enumeration supports at most 1023 inequalities");
  std::vector<std::vector<mpq_class>> pts;
  pts.reserve(rays.size());
  for (const auto& r : rays) {
    if (sgn(r[0]) <= 0) throw Unbounded("polyhedron has a recession direction");
    std::vector<mpq_class> y(k);
    for (size_t j = 0; j < k; ++j) {
      y[j] = mpq_class(r[j + 1], r[0]);
      y[j].canonicalize();
    }
    pts.push_back(std::move(y));
  }
  return pts;
}

}  // namespace copoly::detail
