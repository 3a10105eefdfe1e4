#include "hdqi/dense.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace hdqi {

double DenseState::norm() const {
  double s = 0;
  for (const cplx& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

void DenseState::normalize() {
  double nv = norm();
  if (nv == 0) throw std::runtime_error("cannot normalize the zero state");
  for (cplx& a : amp) a /= nv;
}

CMat dense_word(const PauliWord& w) {
  std::size_t d = std::size_t(1) << w.n;
  CMat m = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  // qubit q <-> bit q of the index
  uint64_t xmask = 0, zmask = 0;
  for (std::size_t q : w.x.ones()) xmask |= uint64_t(1) << q;
  for (std::size_t q : w.z.ones()) zmask |= uint64_t(1) << q;
  int ypow = int(BitVec::and_popcount(w.x, w.z) % 4);
  static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  for (uint64_t b = 0; b < d; ++b) {
    cplx v = ipow[ypow];
    if (std::popcount(b & zmask) & 1) v = -v;
    m(Eigen::Index(b ^ xmask), Eigen::Index(b)) = v;
  }
  return m;
}

CMat dense_hamiltonian(const PauliHamiltonian& h) {
  std::size_t d = std::size_t(1) << h.n;
  CMat m = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  for (const auto& t : h.terms) m += double(t.sign) * dense_word(t.word);
  return m;
}

DensityMatrix rho_direct(const PauliHamiltonian& h, const UniPoly& poly) {
  if (h.n > 12) throw std::invalid_argument("rho_direct: n <= 12 required");
  std::size_t d = std::size_t(1) << h.n;
  CMat H = dense_hamiltonian(h);
  CMat P = CMat::Zero(Eigen::Index(d), Eigen::Index(d));
  for (std::size_t k = poly.coeffs.size(); k-- > 0;) {
    P = P * H;
    P += poly.coeffs[k] * CMat::Identity(Eigen::Index(d), Eigen::Index(d));
  }
  CMat sq = P * P;
  double tr = sq.trace().real();
  if (!(tr > 1e-300)) throw std::runtime_error("rho_direct: Tr[P^2(H)] vanishes");
  DensityMatrix rho;
  rho.mat = sq / tr;
  return rho;
}

DensityMatrix rho_of_function(const PauliHamiltonian& h,
                              const std::function<double(double)>& f) {
  if (h.n > 12) throw std::invalid_argument("rho_of_function: n <= 12 required");
  CMat H = dense_hamiltonian(h);
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  Eigen::VectorXd vals = es.eigenvalues();
  Eigen::VectorXd w(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    double fv = f(vals(i));
    if (fv < 0) throw std::invalid_argument("rho_of_function: f must be nonnegative");
    w(i) = fv;
  }
  double tr = w.sum();
  if (!(tr > 1e-300)) throw std::runtime_error("rho_of_function: f vanishes on the spectrum");
  DensityMatrix rho;
  rho.mat = es.eigenvectors() * (w / tr).asDiagonal() * es.eigenvectors().adjoint();
  return rho;
}

DensityMatrix gibbs_exact(const PauliHamiltonian& h, double beta) {
  return rho_of_function(h, [beta](double x) { return std::exp(-beta * x); });
}

DenseState max_entangled(std::size_t n) {
  DenseState s(2 * n);
  double a = 1.0 / std::sqrt(double(std::size_t(1) << n));
  for (uint64_t x = 0; x < (uint64_t(1) << n); ++x)
    s.amp[std::size_t((x << n) | x)] = a;
  return s;
}

namespace {

void apply_h_bit(std::vector<cplx>& amp, std::size_t bit) {
  const double inv = 1.0 / std::sqrt(2.0);
  uint64_t mask = uint64_t(1) << bit;
  for (uint64_t i = 0; i < amp.size(); ++i) {
    if (i & mask) continue;
    cplx a = amp[i], b = amp[i | mask];
    amp[i] = (a + b) * inv;
    amp[i | mask] = (a - b) * inv;
  }
}

// permutation i -> i ^ f(i) where f depends only on bits above `bit`... here
// specialized: CX with control bit c, target bit t.
void apply_cx_bits(std::vector<cplx>& amp, std::size_t control, std::size_t target) {
  uint64_t cm = uint64_t(1) << control, tm = uint64_t(1) << target;
  for (uint64_t i = 0; i < amp.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(amp[i], amp[i | tm]);
}

void swap_registers(std::vector<cplx>& amp, std::size_t n) {
  // swap bit fields [n, 2n) and [0, n)
  uint64_t lowmask = (uint64_t(1) << n) - 1;
  for (uint64_t i = 0; i < amp.size(); ++i) {
    uint64_t lo = i & lowmask, hi = (i >> n) & lowmask, rest = i >> (2 * n);
    uint64_t j = (rest << (2 * n)) | (lo << n) | hi;
    if (j > i) std::swap(amp[i], amp[j]);
  }
}

void phase_overlap(std::vector<cplx>& amp, std::size_t n, bool inverse) {
  // multiply |a>_B |b>_C by i^{|a & b|} (or its conjugate)
  static const cplx ipow[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  uint64_t lowmask = (uint64_t(1) << n) - 1;
  for (uint64_t i = 0; i < amp.size(); ++i) {
    uint64_t b = i & lowmask, a = (i >> n) & lowmask;
    int e = std::popcount(a & b) & 3;
    if (inverse) e = (4 - e) & 3;
    if (e) amp[i] *= ipow[e];
  }
}

}  // namespace

void bell_transform(DenseState& s, std::size_t n) {
  // CX B_j -> C_j, then H on B, then swap registers, then the Y phase fix
  for (std::size_t j = 0; j < n; ++j) apply_cx_bits(s.amp, n + j, j);
  for (std::size_t j = 0; j < n; ++j) apply_h_bit(s.amp, n + j);
  swap_registers(s.amp, n);
  phase_overlap(s.amp, n, false);
}

void bell_transform(DenseState& s) {
  if (s.num_qubits % 2 != 0)
    throw std::invalid_argument("bell_transform: even qubit count required");
  bell_transform(s, s.num_qubits / 2);
}

void bell_transform_inverse(DenseState& s, std::size_t n) {
  phase_overlap(s.amp, n, true);
  swap_registers(s.amp, n);
  for (std::size_t j = 0; j < n; ++j) apply_h_bit(s.amp, n + j);
  for (std::size_t j = 0; j < n; ++j) apply_cx_bits(s.amp, n + j, j);
}

void bell_transform_inverse(DenseState& s) {
  if (s.num_qubits % 2 != 0)
    throw std::invalid_argument("bell_transform: even qubit count required");
  bell_transform_inverse(s, s.num_qubits / 2);
}

std::pair<double, double> distance_metrics(const DensityMatrix& a,
                                           const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("distance_metrics: dimension mismatch");
  double td = trace_distance(a, b);
  // Uhlmann fidelity F = Tr sqrt(sqrt(a) b sqrt(a))
  Eigen::SelfAdjointEigenSolver<CMat> ea(a.mat);
  Eigen::VectorXd va = ea.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  CMat sqa = ea.eigenvectors() * va.asDiagonal() * ea.eigenvectors().adjoint();
  CMat inner = sqa * b.mat * sqa;
  Eigen::SelfAdjointEigenSolver<CMat> ei(inner);
  double f = ei.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return {td, f};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  CMat diff = a.mat - b.mat;
  Eigen::SelfAdjointEigenSolver<CMat> es(diff);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace hdqi
