#include "entwined/lie.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "entwined/error.hpp"

namespace entwined {

namespace {

constexpr double kClosureTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr Complex kI{0.0, 1.0};

double closure_residual(const GeneratorSet& rep, const Tensor3& f) {
  double worst = 0.0;
  const auto d = rep.d();
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      ComplexMatrix diff = commutator(rep[a], rep[b]);
      for (std::size_t c = 0; c < d; ++c) {
        if (f(a, b, c) != 0.0) {
          diff -= kI * f(a, b, c) * rep[c];
        }
      }
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Tensor3 structure_from_traces(const GeneratorSet& rep) {
  const auto d = rep.d();
  Tensor3 f(d);
  const double t = rep.trace_index;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      const ComplexMatrix comm = commutator(rep[a], rep[b]);
      for (std::size_t c = 0; c < d; ++c) {
        // tr(X Y) without forming the product.
        const Complex tr = (comm.transpose().cwiseProduct(rep[c])).sum();
        const double value = (-kI / t * tr).real();
        f(a, b, c) = value;
        f(b, a, c) = -value;
      }
    }
  }
  return f;
}

} // namespace

std::string canonical_algebra_id(const std::string& tag) {
  std::string s;
  for (char ch : tag) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  if (s.rfind("su", 0) != 0 || s.size() < 3) {
    throw Error(ErrorKind::UnknownAlgebra, "unknown algebra '" + tag + "'");
  }
  std::string digits = s.substr(2);
  if (digits.front() == '(' && digits.back() == ')') {
    digits = digits.substr(1, digits.size() - 2);
  }
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    throw Error(ErrorKind::UnknownAlgebra, "unknown algebra '" + tag + "'");
  }
  const int n = std::stoi(digits);
  if (n < 2) {
    throw Error(ErrorKind::UnknownAlgebra, "su(n) requires n >= 2, got '" + tag + "'");
  }
  return "su(" + std::to_string(n) + ")";
}

int su_order(const std::string& algebra_id) {
  const auto id = canonical_algebra_id(algebra_id);
  return std::stoi(id.substr(3, id.size() - 4));
}

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

GeneratorSet su_fundamental(int n) {
  if (n < 2) {
    throw Error(ErrorKind::BadParameter, "su_fundamental: n must be >= 2");
  }
  GeneratorSet rep;
  rep.algebra_id = "su(" + std::to_string(n) + ")";
  rep.trace_index = 0.5;
  const auto dim = static_cast<Eigen::Index>(n);
  for (Eigen::Index k = 1; k < dim; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      ComplexMatrix sym = ComplexMatrix::Zero(dim, dim);
      sym(j, k) = 0.5;
      sym(k, j) = 0.5;
      rep.generators.push_back(std::move(sym));

      ComplexMatrix anti = ComplexMatrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -0.5);
      anti(k, j) = Complex(0.0, 0.5);
      rep.generators.push_back(std::move(anti));
    }
    // diag(1, ..., 1, -k, 0, ...) / sqrt(2 k (k + 1)), with k ones.
    const double kk = static_cast<double>(k);
    const double norm = 1.0 / std::sqrt(2.0 * kk * (kk + 1.0));
    ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index j = 0; j < k; ++j) {
      diag(j, j) = norm;
    }
    diag(k, k) = -kk * norm;
    rep.generators.push_back(std::move(diag));
  }
  return rep;
}

std::vector<std::size_t> su_cartan_indices(int n) {
  std::vector<std::size_t> out;
  for (int k = 2; k <= n; ++k) {
    out.push_back(static_cast<std::size_t>(k * k - 2));
  }
  return out;
}

StructureConstants structure_constants(const GeneratorSet& rep) {
  if (rep.trace_index <= kTraceTol) {
    throw Error(ErrorKind::BadParameter,
                "structure_constants: trace index must be positive (trivial representation?)");
  }
  StructureConstants out{rep.algebra_id, structure_from_traces(rep)};
  const double residual = closure_residual(rep, out.f);
  if (residual > kClosureTol * std::max(1.0, rep.trace_index)) {
    throw Error(ErrorKind::NotClosed, "structure_constants: reconstruction residual " +
                                          std::to_string(residual) + " exceeds tolerance");
  }
  return out;
}

double jacobi_residual(const StructureConstants& sc) {
  const auto& f = sc.f;
  const auto d = f.d();
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t e = 0; e < d; ++e) {
          double sum = 0.0;
          for (std::size_t k = 0; k < d; ++k) {
            sum += f(a, b, k) * f(k, c, e) + f(b, c, k) * f(k, a, e) + f(c, a, k) * f(k, b, e);
          }
          worst = std::max(worst, std::abs(sum));
        }
      }
    }
  }
  return worst;
}

double antisymmetry_residual(const StructureConstants& sc) {
  const auto& f = sc.f;
  const auto d = f.d();
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t c = 0; c < d; ++c) {
        worst = std::max({worst, std::abs(f(a, b, c) + f(b, a, c)), std::abs(f(a, b, c) + f(a, c, b))});
      }
    }
  }
  return worst;
}

Tensor3 d_symbols(const GeneratorSet& rep) {
  if (std::abs(rep.trace_index - 0.5) > kTraceTol) {
    throw Error(ErrorKind::WrongNormalization,
                "d_symbols: expects trace index 1/2, got " + std::to_string(rep.trace_index));
  }
  const auto d = rep.d();
  Tensor3 out(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const ComplexMatrix anti = anticommutator(rep[a], rep[b]);
      for (std::size_t c = b; c < d; ++c) {
        const double value = 2.0 * (anti.transpose().cwiseProduct(rep[c])).sum().real();
        // Fill every permutation of (a, b, c).
        out(a, b, c) = out(a, c, b) = out(b, a, c) = value;
        out(b, c, a) = out(c, a, b) = out(c, b, a) = value;
      }
    }
  }
  return out;
}

AlgebraFamily parse_family(const std::string& tag) {
  std::string s;
  for (char ch : tag) {
    s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (s == "a") return AlgebraFamily::A;
  if (s == "b") return AlgebraFamily::B;
  if (s == "c") return AlgebraFamily::C;
  if (s == "d") return AlgebraFamily::D;
  if (s == "g2") return AlgebraFamily::G2;
  if (s == "f4") return AlgebraFamily::F4;
  if (s == "e6") return AlgebraFamily::E6;
  if (s == "e7") return AlgebraFamily::E7;
  if (s == "e8") return AlgebraFamily::E8;
  throw Error(ErrorKind::BadParameter, "unknown algebra family '" + tag + "'");
}

std::string to_string(AlgebraFamily family) {
  switch (family) {
  case AlgebraFamily::A: return "a";
  case AlgebraFamily::B: return "b";
  case AlgebraFamily::C: return "c";
  case AlgebraFamily::D: return "d";
  case AlgebraFamily::G2: return "g2";
  case AlgebraFamily::F4: return "f4";
  case AlgebraFamily::E6: return "e6";
  case AlgebraFamily::E7: return "e7";
  case AlgebraFamily::E8: return "e8";
  }
  return "?";
}

AlgebraInfo algebra_catalog(AlgebraFamily family, int n) {
  auto classical = [&](int min_n, int dimension, std::string alt) {
    if (n < min_n) {
      throw Error(ErrorKind::BadParameter, "algebra_catalog: " + to_string(family) +
                                               "_n requires n >= " + std::to_string(min_n));
    }
    return AlgebraInfo{family, n, n, dimension, std::move(alt)};
  };
  auto exceptional = [&](int rank, int dimension) {
    if (n != 0 && n != rank) {
      throw Error(ErrorKind::BadParameter, "algebra_catalog: " + to_string(family) +
                                               " has fixed rank " + std::to_string(rank));
    }
    return AlgebraInfo{family, rank, rank, dimension, to_string(family)};
  };
  switch (family) {
  case AlgebraFamily::A: return classical(1, n * (n + 2), "su(" + std::to_string(n + 1) + ")");
  case AlgebraFamily::B: return classical(1, n * (2 * n + 1), "o(" + std::to_string(2 * n + 1) + ")");
  case AlgebraFamily::C: return classical(1, n * (2 * n + 1), "usp(" + std::to_string(2 * n) + ")");
  case AlgebraFamily::D: return classical(3, n * (2 * n - 1), "o(" + std::to_string(2 * n) + ")");
  case AlgebraFamily::G2: return exceptional(2, 14);
  case AlgebraFamily::F4: return exceptional(4, 52);
  case AlgebraFamily::E6: return exceptional(6, 78);
  case AlgebraFamily::E7: return exceptional(7, 133);
  case AlgebraFamily::E8: return exceptional(8, 248);
  }
  throw Error(ErrorKind::BadParameter, "algebra_catalog: unknown family");
}

VerificationReport verify_generator_set(const GeneratorSet& rep) {
  VerificationReport report;
  if (rep.generators.empty()) {
    report.degenerate = true;
    report.failures.push_back("degenerate: empty generator list");
    return report;
  }
  const auto n = rep.generators.front().rows();
  for (const auto& t : rep.generators) {
    if (t.rows() != n || t.cols() != n) {
      report.degenerate = true;
      report.failures.push_back("degenerate: generators are not all square of the same size");
      return report;
    }
  }

  double scale = 1.0;
  for (const auto& t : rep.generators) {
    scale = std::max(scale, t.norm());
  }

  double herm = 0.0;
  double traceless = 0.0;
  for (const auto& t : rep.generators) {
    herm = std::max(herm, hermiticity_residual(t));
    traceless = std::max(traceless, std::abs(t.trace()));
  }
  double ortho = 0.0;
  for (std::size_t a = 0; a < rep.d(); ++a) {
    for (std::size_t b = 0; b < rep.d(); ++b) {
      const Complex tr = (rep[a].transpose().cwiseProduct(rep[b])).sum();
      const double expected = a == b ? rep.trace_index : 0.0;
      ortho = std::max(ortho, std::abs(tr - expected));
    }
  }
  report.checks.push_back({"hermiticity", herm, tol::hermitian * scale});
  report.checks.push_back({"traceless", traceless, tol::hermitian * scale});
  report.checks.push_back({"trace_orthonormality", ortho, kTraceTol * scale});

  double closure = 0.0;
  if (rep.trace_index > kTraceTol) {
    closure = closure_residual(rep, structure_from_traces(rep));
  } else {
    // Trivial representation: closure holds iff all brackets vanish.
    for (std::size_t a = 0; a < rep.d(); ++a) {
      for (std::size_t b = a + 1; b < rep.d(); ++b) {
        closure = std::max(closure, commutator(rep[a], rep[b]).cwiseAbs().maxCoeff());
      }
    }
  }
  report.checks.push_back({"closure", closure, kClosureTol * scale});

  for (const auto& check : report.checks) {
    if (!check.passed()) {
      report.failures.push_back(check.name + " residual " + std::to_string(check.residual) +
                                " exceeds " + std::to_string(check.tolerance));
    }
  }
  return report;
}

} // namespace entwined
