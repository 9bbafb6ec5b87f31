#include "qham/numeric_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace qham {

std::vector<double> float_spectrum(const FullBipartiteGraph& g) {
  const std::size_t N = g.space.vertex_count;
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (std::size_t u = 0; u < N; ++u) {
    for (std::uint32_t v : g.adj[u]) {
      adj(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

CheckResult verify_float_spectrum(const TerwilligerContext& ctx, const SpectralData& sd, double tol) {
  const std::vector<double> numeric = float_spectrum(ctx.graph());

  std::vector<double> exact;
  exact.reserve(numeric.size());
  for (int i = 2 * sd.D; i >= 0; --i) {
    const double theta = sd.eigenvalues[static_cast<std::size_t>(i)].to_double();
    const unsigned long count = sd.multiplicities[static_cast<std::size_t>(i)].get_ui();
    exact.insert(exact.end(), count, theta);
  }

  if (exact.size() != numeric.size()) {
    std::ostringstream os;
    os << "multiplicities sum to " << exact.size() << " but the instance has " << numeric.size()
       << " eigenvalues";
    return CheckResult::failed(os.str());
  }
  for (std::size_t k = 0; k < exact.size(); ++k) {
    if (std::abs(exact[k] - numeric[k]) > tol) {
      std::ostringstream os;
      os << "eigenvalue " << k << ": exact " << exact[k] << " vs numeric " << numeric[k];
      return CheckResult::failed(os.str());
    }
  }
  return CheckResult::passed();
}

}  // namespace qham
