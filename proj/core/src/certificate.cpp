#include "tsppsd/certificate.hpp"

#include <algorithm>

#include "tsppsd/errors.hpp"

namespace tsppsd {

bool CertificatePolynomial::value_at(const std::function<bool(int)>& coordinate_is_one) const {
  for (int i : positive) {
    if (!coordinate_is_one(i)) return false;
  }
  for (int j : complemented) {
    if (coordinate_is_one(j)) return false;
  }
  return true;
}

bool CertificatePolynomial::value_at(const HamiltonianCycle& cycle) const {
  return value_at([&](int i) { return cycle.mask().test(i); });
}

Rational CertificatePolynomial::value_at(std::span<const Rational> point) const {
  Rational v = 1;
  for (int i : positive) v *= point[static_cast<std::size_t>(i)];
  for (int j : complemented) v *= 1 - point[static_cast<std::size_t>(j)];
  return v;
}

std::vector<std::pair<std::vector<int>, Rational>> CertificatePolynomial::expand() const {
  std::vector<std::pair<std::vector<int>, Rational>> terms;
  const std::size_t c = complemented.size();
  for (std::size_t subset = 0; subset < (std::size_t{1} << c); ++subset) {
    std::vector<int> mono(positive);
    int picked = 0;
    for (std::size_t b = 0; b < c; ++b) {
      if (subset & (std::size_t{1} << b)) {
        mono.push_back(complemented[b]);
        ++picked;
      }
    }
    std::sort(mono.begin(), mono.end());
    // x_i^2 = x_i on 0/1 points; keep distinct coordinates only.
    mono.erase(std::unique(mono.begin(), mono.end()), mono.end());
    Rational coeff = (picked % 2 == 0) ? 1 : -1;
    auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) { return t.first == mono; });
    if (it == terms.end()) terms.emplace_back(std::move(mono), coeff);
    else it->second += coeff;
  }
  std::erase_if(terms, [](const auto& t) { return sgn(t.second) == 0; });
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
  });
  return terms;
}

std::string CertificatePolynomial::to_string_edges(int n) const {
  std::string out;
  auto append = [&](const std::string& factor) {
    if (!out.empty()) out += "*";
    out += factor;
  };
  for (int i : positive) append("x" + edge_at(n, i).label());
  for (int j : complemented) append("(1-x" + edge_at(n, j).label() + ")");
  return out.empty() ? "1" : out;
}

std::string CertificatePolynomial::to_string_coords() const {
  std::string out;
  auto append = [&](const std::string& factor) {
    if (!out.empty()) out += "*";
    out += factor;
  };
  for (int i : positive) append("x" + std::to_string(i + 1));
  for (int j : complemented) append("(1-x" + std::to_string(j + 1) + ")");
  return out.empty() ? "1" : out;
}

CertificatePolynomial edge_monomial(int n, std::span<const Edge> edges) {
  CertificatePolynomial p;
  p.kind = CertificatePolynomial::Kind::MonomialProduct;
  for (const auto& e : edges) {
    check_edge(n, e);
    p.positive.push_back(edge_index(n, e));
  }
  return p;
}

CertificatePolynomial edge_complement_product(int n, std::span<const Edge> edges) {
  CertificatePolynomial p;
  p.kind = CertificatePolynomial::Kind::OneMinusEdgeProduct;
  for (const auto& e : edges) {
    check_edge(n, e);
    p.complemented.push_back(edge_index(n, e));
  }
  return p;
}

std::string to_string(CertificatePolynomial::Kind kind) {
  switch (kind) {
    case CertificatePolynomial::Kind::MonomialProduct: return "monomial-product";
    case CertificatePolynomial::Kind::OneMinusEdgeProduct: return "one-minus-edge-product";
    case CertificatePolynomial::Kind::ZeroOneProduct: return "zero-one-product";
  }
  return "unknown";
}

}  // namespace tsppsd
