#include "cesaro/generators.hpp"

#include <algorithm>
#include <cmath>

#include "cesaro/defaults.hpp"

namespace cesaro {

Seq marcinkiewicz_witness(const ConcaveWeight& psi, std::size_t n) {
  if (n == 0) throw ValidationError("witness length must be positive");
  std::vector<cplx> v(n);
  for (std::size_t k = 1; k <= n; ++k) v[k - 1] = psi.increment(k);
  return Seq(std::move(v));
}

Seq random_seq(Rng& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) {
    if (pick(rng) < 0.1) continue;  // keep some exact zeros in play
    z = cplx(u(rng), u(rng));
  }
  return Seq(std::move(v));
}

std::pair<Seq, Seq> random_hlp_pair(Rng& rng, std::size_t n) {
  if (n == 0) throw ValidationError("pair length must be positive");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> y(n);
  for (auto& t : y) t = u(rng);
  std::sort(y.begin(), y.end(), std::greater<>());

  std::vector<double> x = y;
  std::uniform_int_distribution<std::size_t> at(0, n - 1);
  for (std::size_t moves = 0; moves < 2 * n; ++moves) {
    std::size_t i = at(rng), j = at(rng);
    if (x[i] < x[j]) std::swap(i, j);
    const double delta = 0.5 * u(rng) * (x[i] - x[j]);
    x[i] -= delta;
    x[j] += delta;
  }
  const double shrink = 0.9 + 0.1 * u(rng);
  std::vector<cplx> xc(n), yc(n);
  for (std::size_t k = 0; k < n; ++k) {
    xc[k] = shrink * x[k];
    yc[k] = y[k];
  }
  return {Seq(std::move(xc)), Seq(std::move(yc))};
}

MatrixOp random_matrix(Rng& rng, std::size_t n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  MatrixOp::Dense m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
  return MatrixOp(std::move(m));
}

MatrixOp random_psd(Rng& rng, std::size_t n) {
  const MatrixOp b = random_matrix(rng, n);
  MatrixOp::Dense m = b.mat() * b.mat().adjoint();
  m *= cplx(1.0 / double(n));
  return MatrixOp(std::move(m));
}

MatrixOp random_unitary(Rng& rng, std::size_t n) {
  const MatrixOp b = random_matrix(rng, n);
  Eigen::HouseholderQR<MatrixOp::Dense> qr(b.mat());
  MatrixOp::Dense q = qr.householderQ() * MatrixOp::Dense::Identity(n, n);
  return MatrixOp(std::move(q));
}

MatrixOp diag_projection(Rng& rng, std::size_t n) {
  if (n < 2) throw ValidationError("projection needs dimension at least 2");
  std::bernoulli_distribution coin(0.5);
  std::vector<cplx> d(n, cplx(0.0));
  std::size_t ones = 0;
  for (auto& z : d) {
    if (coin(rng)) {
      z = 1.0;
      ++ones;
    }
  }
  // keep it proper: neither zero nor the identity
  if (ones == 0) d[0] = 1.0;
  if (ones == n) d[n - 1] = 0.0;
  return MatrixOp::diag(d);
}

MatrixOp rank_k_projection(Rng& rng, std::size_t n, std::size_t k) {
  if (k == 0 || k > n) throw ValidationError("projection rank must lie in [1, dim]");
  const MatrixOp b = random_matrix(rng, n);
  Eigen::HouseholderQR<MatrixOp::Dense> qr(b.mat());
  const MatrixOp::Dense q = qr.householderQ() * MatrixOp::Dense::Identity(n, n);
  const MatrixOp::Dense q1 = q.leftCols(Eigen::Index(k));
  return MatrixOp(q1 * q1.adjoint());
}

Seq named_seq(const std::string& text) {
  if (text == "e1") return Seq::basis(1);
  auto tail_after = [&](const char* prefix) -> std::string {
    const std::size_t len = std::string(prefix).size();
    return text.substr(len);
  };
  auto parse_count = [&](const std::string& s) -> std::size_t {
    try {
      const long long v = std::stoll(s);
      if (v <= 0) throw ValidationError("count must be positive in '" + text + "'");
      return std::size_t(v);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("bad count in sequence name '" + text + "'");
    }
  };
  if (text.rfind("ones:", 0) == 0) return Seq::ones(parse_count(tail_after("ones:")));
  if (text.rfind("basis:", 0) == 0) return Seq::basis(parse_count(tail_after("basis:")));
  if (text.rfind("witness:", 0) == 0) {
    const std::string rest = tail_after("witness:");
    const std::size_t cut = rest.rfind(':');
    if (cut == std::string::npos)
      throw ValidationError("witness needs a weight and a length, e.g. witness:log1p:4096");
    const auto psi = ConcaveWeight::named(rest.substr(0, cut));
    return marcinkiewicz_witness(*psi, parse_count(rest.substr(cut + 1)));
  }
  throw ValidationError("unknown sequence name '" + text + "'");
}

}  // namespace cesaro
