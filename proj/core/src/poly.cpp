#include "hdqi/poly.hpp"

#include "hdqi/bits.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace hdqi {

std::string UniPoly::to_json() const {
  nlohmann::json j;
  j["coeffs"] = coeffs;
  return j.dump();
}

UniPoly UniPoly::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  return UniPoly(j.at("coeffs").get<std::vector<double>>());
}

BigInt a_coefficient(unsigned m, unsigned ell, unsigned r) {
  if (r > m) throw std::invalid_argument("a(m,l,r): r > m");
  if (r > ell || ((ell - r) & 1u)) return 0;
  BigInt total = 0;
  for (unsigned n1 = 0; n1 <= r; ++n1) {
    BigInt outer = big_binomial(r, n1);
    if (n1 & 1u) outer = -outer;
    BigInt inner = 0;
    for (unsigned n2 = 0; n2 + r <= m; ++n2) {
      long long base = (long long)m - 2ll * n1 - 2ll * n2;
      BigInt pw = 1;
      for (unsigned t = 0; t < ell; ++t) pw *= base;
      inner += big_binomial(m - r, n2) * pw;
    }
    total += outer * inner;
  }
  BigInt denom = BigInt(1) << m;
  if (total % denom != 0)
    throw std::logic_error("a(m,l,r): non-integer result");
  return total / denom;
}

SymmetricWeights symmetric_weights(const UniPoly& poly, std::size_t m) {
  std::size_t ell = poly.degree();
  if (ell > m) throw std::invalid_argument("symmetric_weights: deg > m");
  SymmetricWeights sw;
  sw.m = m;
  sw.w.assign(ell + 1, 0.0);
  for (std::size_t j = 0; j <= ell; ++j) {
    long double acc = 0;
    for (std::size_t k = j; k <= ell; ++k) {
      if (poly.coeffs[k] == 0.0) continue;
      BigInt a = a_coefficient(unsigned(m), unsigned(k), unsigned(j));
      acc += (long double)poly.coeffs[k] * a.convert_to<long double>();
    }
    sw.w[j] = double(acc);
  }
  return sw;
}

std::vector<double> bessel_i_list(double a, std::size_t kmax) {
  std::vector<double> out(kmax + 1, 0.0);
  if (a == 0.0) {
    out[0] = 1.0;
    return out;
  }
  std::size_t start = kmax + 20 + std::size_t(2.0 * std::sqrt((double(kmax) + 20.0) * std::max(a, 1.0)));
  std::vector<double> f(start + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-280;
  for (std::size_t k = start; k-- > 0;) {
    f[k] = f[k + 2] + (2.0 * double(k + 1) / a) * f[k + 1];
    if (std::abs(f[k]) > 1e260) {
      for (std::size_t j = k; j < f.size(); ++j) f[j] *= 1e-260;
    }
  }
  double norm = f[0];
  for (std::size_t k = 1; k <= start; ++k) norm += 2.0 * f[k];
  double scale = std::exp(a) / norm;
  for (std::size_t k = 0; k <= kmax; ++k) out[k] = f[k] * scale;
  return out;
}

namespace {

// power-basis coefficients of T_k on [-1,1]
std::vector<std::vector<double>> chebyshev_power_table(std::size_t kmax) {
  std::vector<std::vector<double>> T(kmax + 1);
  T[0] = {1.0};
  if (kmax >= 1) T[1] = {0.0, 1.0};
  for (std::size_t k = 2; k <= kmax; ++k) {
    T[k].assign(k + 1, 0.0);
    for (std::size_t j = 0; j < T[k - 1].size(); ++j) T[k][j + 1] += 2.0 * T[k - 1][j];
    for (std::size_t j = 0; j < T[k - 2].size(); ++j) T[k][j] -= T[k - 2][j];
  }
  return T;
}

}  // namespace

double GibbsPoly::eval_x(double x) const {
  // Clenshaw over the Chebyshev expansion in u = x/K
  double u = (K > 0) ? x / K : 0.0;
  double b1 = 0, b2 = 0;
  for (std::size_t k = cheb.size(); k-- > 1;) {
    double b0 = 2.0 * u * b1 - b2 + cheb[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + cheb[0];
}

double GibbsPoly::grid_relative_error(std::size_t grid_points) const {
  double worst = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    double x = -K + 2.0 * K * double(i) / double(grid_points - 1);
    double target = std::exp(-beta * x);
    double got = eval_x(x);
    worst = std::max(worst, std::abs(got * got - target) / target);
  }
  return worst;
}

GibbsPoly gibbs_poly(double beta, double K, double epsilon) {
  if (beta < 0 || K <= 0 || epsilon <= 0)
    throw std::invalid_argument("gibbs_poly: beta >= 0, K > 0, epsilon > 0 required");
  GibbsPoly g;
  g.beta = beta;
  g.K = K;
  g.epsilon = epsilon;
  double bound = 1.12 * beta * K + 0.648 * std::log(12.0 / epsilon);
  g.degree = std::max<std::size_t>(1, std::size_t(std::ceil(bound)));
  double a = beta * K / 2.0;
  auto bessel = bessel_i_list(a, g.degree);
  g.cheb.assign(g.degree + 1, 0.0);
  g.cheb[0] = bessel[0];
  for (std::size_t k = 1; k <= g.degree; ++k)
    g.cheb[k] = 2.0 * ((k % 2) ? -bessel[k] : bessel[k]);
  // power basis in x: substitute u = x/K
  auto T = chebyshev_power_table(g.degree);
  std::vector<double> pu(g.degree + 1, 0.0);
  for (std::size_t k = 0; k <= g.degree; ++k)
    for (std::size_t j = 0; j < T[k].size(); ++j) pu[j] += g.cheb[k] * T[k][j];
  std::vector<double> px(g.degree + 1, 0.0);
  double kp = 1.0;
  for (std::size_t j = 0; j <= g.degree; ++j) {
    px[j] = pu[j] / kp;
    kp *= K;
  }
  g.power = UniPoly(std::move(px));
  return g;
}

UniPoly interpolate_sqrt(const std::function<double(double)>& f, std::size_t m) {
  std::size_t points = m + 1;
  std::vector<long double> node(points), val(points);
  for (std::size_t i = 0; i < points; ++i) {
    node[i] = -(long double)m + 2.0L * (long double)i;
    double fv = f(double(node[i]));
    if (fv < 0) throw std::invalid_argument("interpolate_sqrt: f must be nonnegative on the grid");
    val[i] = std::sqrt((long double)fv);
  }
  // divided differences
  std::vector<long double> dd = val;
  for (std::size_t level = 1; level < points; ++level)
    for (std::size_t i = points - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (node[i] - node[i - level]);
  // Newton form -> power basis
  std::vector<long double> power(points, 0.0L), basis{1.0L};
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) power[j] += dd[i] * basis[j];
    if (i + 1 < points) {
      // basis *= (x - node[i])
      basis.push_back(0.0L);
      for (std::size_t j = basis.size() - 1; j >= 1; --j)
        basis[j] = basis[j - 1] - node[i] * basis[j];
      basis[0] = -node[i] * basis[0];
    }
  }
  std::vector<double> out(points);
  for (std::size_t j = 0; j < points; ++j) out[j] = double(power[j]);
  UniPoly p(std::move(out));
  // honest failure on loss of precision rather than a silently bad fit
  for (std::size_t i = 0; i < points; ++i) {
    double target = double(val[i]);
    double got = p.eval(double(node[i]));
    double scale = std::max(1.0, std::abs(target));
    if (std::abs(got - target) > 1e-8 * scale)
      throw std::runtime_error("interpolate_sqrt: interpolation residual above 1e-8");
  }
  return p;
}

std::size_t BlockExpansion::flat_index(const std::vector<std::size_t>& a) const {
  std::size_t idx = 0;
  for (std::size_t t = 0; t < dims.size(); ++t) idx += a[t] * strides[t];
  return idx;
}

std::vector<std::size_t> BlockExpansion::pattern_counts(const std::vector<bool>& y) const {
  std::vector<std::size_t> a(blocks.size(), 0);
  for (std::size_t pos = 0; pos < y.size(); ++pos)
    if (y[pos]) ++a[block_of[pos]];
  return a;
}

BlockExpansion blockwise_expand(const UniPoly& poly, std::size_t m,
                                const std::vector<Relation>& relations) {
  std::size_t k = relations.size();
  if (k > 10) throw std::invalid_argument("blockwise_expand: k must be <= 10");

  BlockExpansion bx;
  bx.m = m;
  bx.k = k;

  // Reduce relations to RREF over F2, tracking signs. Pivot = highest index.
  struct Row {
    BitVec bits;
    int sign;
  };
  std::vector<Row> rows;
  std::vector<int> pivot_of;
  for (const auto& rel : relations) {
    Row r{BitVec(m), rel.sign};
    for (std::size_t i : rel.support) r.bits.set(i, true);
    for (std::size_t p = 0; p < rows.size(); ++p)
      if (r.bits.get(std::size_t(pivot_of[p]))) {
        r.bits ^= rows[p].bits;
        r.sign *= rows[p].sign;
      }
    if (r.bits.is_zero())
      throw std::invalid_argument("blockwise_expand: relations are mod-2 dependent");
    int pivot = -1;
    for (std::size_t i = m; i-- > 0;)
      if (r.bits.get(i)) { pivot = int(i); break; }
    rows.push_back(r);
    pivot_of.push_back(pivot);
  }
  // back-eliminate so pivots appear in exactly one row
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t q = 0; q < rows.size(); ++q)
      if (q != p && rows[q].bits.get(std::size_t(pivot_of[p]))) {
        rows[q].bits ^= rows[p].bits;
        rows[q].sign *= rows[p].sign;
      }

  std::vector<bool> is_pivot(m, false);
  for (int p : pivot_of) is_pivot[std::size_t(p)] = true;
  for (std::size_t i = 0; i < m; ++i)
    if (!is_pivot[i]) bx.free_vars.push_back(i);
  for (int p : pivot_of) bx.pivot_vars.push_back(std::size_t(p));
  bx.relation_signs.resize(k);
  for (std::size_t j = 0; j < k; ++j) bx.relation_signs[j] = rows[j].sign;

  // membership patterns over free variables
  std::size_t d = bx.free_vars.size();
  std::vector<uint32_t> pattern(d, 0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t pos = 0; pos < d; ++pos)
      if (rows[j].bits.get(bx.free_vars[pos])) pattern[pos] |= (1u << j);
  std::map<uint32_t, std::size_t> block_id;
  bx.block_of.assign(d, 0);
  std::vector<uint32_t> block_pattern;
  for (std::size_t pos = 0; pos < d; ++pos) {
    auto it = block_id.find(pattern[pos]);
    if (it == block_id.end()) {
      it = block_id.emplace(pattern[pos], bx.blocks.size()).first;
      bx.blocks.emplace_back();
      block_pattern.push_back(pattern[pos]);
    }
    bx.block_of[pos] = it->second;
    bx.blocks[it->second].push_back(pos);
  }
  std::size_t r = bx.blocks.size();
  bx.reflected_blocks.resize(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < r; ++t)
      if (block_pattern[t] & (1u << j)) bx.reflected_blocks[j].push_back(t);

  bx.dims.resize(r);
  for (std::size_t t = 0; t < r; ++t) bx.dims[t] = bx.blocks[t].size();
  bx.strides.assign(r, 1);
  std::size_t D = 1;
  for (std::size_t t = 0; t < r; ++t) {
    bx.strides[t] = D;
    D *= bx.dims[t] + 1;
  }
  if (D > (std::size_t(1) << 26))
    throw std::invalid_argument("blockwise_expand: coefficient array too large");

  // Horner with the tridiagonal-plus-reflection operator, exact rationals.
  std::size_t ell = poly.degree();
  std::vector<Rational> v(D, Rational(0)), u(D, Rational(0));
  std::vector<std::size_t> multi(r, 0);
  auto decode = [&](std::size_t idx, std::vector<std::size_t>& a) {
    for (std::size_t t = 0; t < r; ++t) {
      a[t] = idx % (bx.dims[t] + 1);
      idx /= (bx.dims[t] + 1);
    }
  };
  auto reflect_index = [&](std::size_t idx, std::size_t j) {
    std::vector<std::size_t> a(r);
    decode(idx, a);
    for (std::size_t t : bx.reflected_blocks[j]) a[t] = bx.dims[t] - a[t];
    return bx.flat_index(a);
  };
  // precompute reflection permutations
  std::vector<std::vector<uint32_t>> refl(k, std::vector<uint32_t>(D));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t idx = 0; idx < D; ++idx) refl[j][idx] = uint32_t(reflect_index(idx, j));

  v[0] = Rational(poly.coeffs[ell]);
  for (std::size_t q = ell; q-- > 0;) {
    // u = A v
    for (std::size_t idx = 0; idx < D; ++idx) {
      decode(idx, multi);
      Rational acc(0);
      for (std::size_t t = 0; t < r; ++t) {
        std::size_t at = multi[t];
        if (at >= 1) acc += Rational(long(at)) * v[idx - bx.strides[t]];
        if (at + 1 <= bx.dims[t])
          acc += Rational(long(bx.dims[t] - at)) * v[idx + bx.strides[t]];
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (bx.relation_signs[j] > 0) acc += v[refl[j][idx]];
        else acc -= v[refl[j][idx]];
      }
      u[idx] = acc;
    }
    u[0] += Rational(poly.coeffs[q]);
    std::swap(u, v);
  }
  bx.gamma.resize(D);
  for (std::size_t idx = 0; idx < D; ++idx) bx.gamma[idx] = to_double(v[idx]);
  return bx;
}

}  // namespace hdqi
