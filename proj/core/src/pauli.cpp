#include "hdqi/pauli.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hdqi {

PauliWord PauliWord::single(std::size_t n, std::size_t q, char c) {
  PauliWord p(n);
  p.set_letter(q, c);
  return p;
}

std::size_t PauliWord::weight() const {
  std::size_t w = 0;
  const auto& xw = x.words();
  const auto& zw = z.words();
  for (std::size_t k = 0; k < xw.size(); ++k) w += std::popcount(xw[k] | zw[k]);
  return w;
}

char PauliWord::letter(std::size_t q) const {
  bool a = x.get(q), b = z.get(q);
  if (a && b) return 'Y';
  if (a) return 'X';
  if (b) return 'Z';
  return 'I';
}

void PauliWord::set_letter(std::size_t q, char c) {
  switch (c) {
    case 'I': x.set(q, false); z.set(q, false); break;
    case 'X': x.set(q, true);  z.set(q, false); break;
    case 'Y': x.set(q, true);  z.set(q, true);  break;
    case 'Z': x.set(q, false); z.set(q, true);  break;
    default: throw std::invalid_argument("Pauli letter must be one of I X Y Z");
  }
}

std::string PauliWord::to_string() const {
  std::string s(n, 'I');
  for (std::size_t q = 0; q < n; ++q) s[q] = letter(q);
  return s;
}

BitVec symp(const PauliWord& p) {
  BitVec v(2 * p.n);
  for (std::size_t i : p.x.ones()) v.set(i, true);
  for (std::size_t i : p.z.ones()) v.set(i + p.n, true);
  return v;
}

PauliWord from_symp(const BitVec& v) {
  if (v.size() % 2 != 0)
    throw std::invalid_argument("symplectic vector must have even length");
  std::size_t n = v.size() / 2;
  PauliWord p(n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    if (v.get(i)) {
      if (i < n) p.x.set(i, true); else p.z.set(i - n, true);
    }
  return p;
}

std::pair<Phase, PauliWord> mul(const PauliWord& p, const PauliWord& q) {
  if (p.n != q.n) throw std::invalid_argument("mul: qubit counts differ");
  PauliWord r(p.n, p.x ^ q.x, p.z ^ q.z);
  // Per qubit, with Hermitian rendering i^{xz} X^x Z^z:
  //   op(p) op(q) = i^{x1 z1 + x2 z2 + 2 z1 x2 - x3 z3} op(r), x3 = x1^x2 ...
  uint64_t e = 0;
  const auto& x1 = p.x.words(); const auto& z1 = p.z.words();
  const auto& x2 = q.x.words(); const auto& z2 = q.z.words();
  for (std::size_t k = 0; k < x1.size(); ++k) {
    uint64_t x3 = x1[k] ^ x2[k], z3 = z1[k] ^ z2[k];
    e += std::popcount(x1[k] & z1[k]);
    e += std::popcount(x2[k] & z2[k]);
    e += 2u * std::popcount(z1[k] & x2[k]);
    e += 3u * std::popcount(x3 & z3);
  }
  return {Phase(int(e & 3)), std::move(r)};
}

bool commutes(const PauliWord& p, const PauliWord& q) {
  if (p.n != q.n) throw std::invalid_argument("commutes: qubit counts differ");
  return BitVec::dot(p.x, q.z) == BitVec::dot(p.z, q.x);
}

bool PauliHamiltonian::is_commuting() const {
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (!commutes(terms[i].word, terms[j].word)) return false;
  return true;
}

PauliHamiltonian parse_hamiltonian(std::istream& in) {
  PauliHamiltonian h;
  std::size_t m = 0;
  if (!(in >> h.n >> m)) throw std::runtime_error("hamiltonian: bad header, expected 'n m'");
  h.terms.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::string sign, word;
    if (!(in >> sign >> word))
      throw std::runtime_error("hamiltonian: truncated term list");
    SignedTerm t;
    if (sign == "+1") t.sign = 1;
    else if (sign == "-1") t.sign = -1;
    else throw std::runtime_error("hamiltonian: sign must be +1 or -1, got '" + sign + "'");
    if (word.size() != h.n)
      throw std::runtime_error("hamiltonian: term length != n");
    t.word = PauliWord(h.n);
    for (std::size_t q = 0; q < h.n; ++q) t.word.set_letter(q, word[q]);
    h.terms.push_back(std::move(t));
  }
  if (h.terms.empty()) throw std::runtime_error("hamiltonian: m must be >= 1");
  return h;
}

PauliHamiltonian parse_hamiltonian_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return parse_hamiltonian(f);
}

void print_hamiltonian(std::ostream& out, const PauliHamiltonian& h) {
  out << h.n << ' ' << h.terms.size() << '\n';
  for (const auto& t : h.terms)
    out << (t.sign > 0 ? "+1 " : "-1 ") << t.word.to_string() << '\n';
}

std::string hamiltonian_to_string(const PauliHamiltonian& h) {
  std::ostringstream ss;
  print_hamiltonian(ss, h);
  return ss.str();
}

}  // namespace hdqi
