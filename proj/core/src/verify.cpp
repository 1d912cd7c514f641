#include "ldp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldp/runner.hpp"

namespace ldp {
namespace {

std::string describe(const RunConfig& c) {
  std::ostringstream os;
  os << to_string(c.backend) << "/vvl=" << c.vvl << "/workers=" << c.workers;
  return os.str();
}

}  // namespace

CheckResult verify_equivalence(KernelId kernel, const LatticeShape& shape,
                               const ConfigMatrix& matrix, std::uint64_t seed,
                               std::size_t steps) {
  CheckResult result{"equivalence", true, {}};
  const auto model = lb::make_d3q19();
  const auto vector_field = kernel == KernelId::scale ? random_vector_field(shape, seed)
                                                      : Field(make_descriptor(shape, 3));
  const auto state = kernel == KernelId::binary_collision
                         ? random_binary_state(shape, seed)
                         : BinaryFluidState{Field(make_descriptor(shape, 1)),
                                            Field(make_descriptor(shape, 1))};

  std::vector<Field> baseline;
  std::string baseline_name;
  std::size_t configs = 0;
  for (Backend backend : matrix.backends) {
    for (std::size_t vvl : matrix.vvls) {
      for (std::size_t workers : matrix.workers) {
        const RunConfig config{backend, vvl, workers};
        std::vector<Field> out;
        try {
          if (kernel == KernelId::scale) {
            out.push_back(run_scale(vector_field, 0.37, config, steps));
          } else {
            auto s = run_binary_collision(state, model, config, steps);
            out.push_back(std::move(s.f));
            out.push_back(std::move(s.g));
          }
        } catch (const std::exception& e) {
          result.passed = false;
          result.detail = describe(config) + " failed: " + e.what();
          return result;
        }
        ++configs;
        if (baseline.empty()) {
          baseline = std::move(out);
          baseline_name = describe(config);
          continue;
        }
        for (std::size_t k = 0; k < out.size(); ++k) {
          if (!field_bitwise_equal(out[k], baseline[k])) {
            result.passed = false;
            std::ostringstream os;
            os << describe(config) << " differs from " << baseline_name
               << " (max |diff| = " << field_max_abs_diff(out[k], baseline[k]) << ")";
            result.detail = os.str();
            return result;
          }
        }
      }
    }
  }
  result.detail = std::to_string(configs) + " configs bitwise identical on " + to_string(shape);
  return result;
}

ConservationError conservation_error(const BinaryFluidState& before,
                                     const BinaryFluidState& after,
                                     const lb::D3Q19Model& model) {
  ConservationError worst;
  const std::size_t nsites = before.f.nsites();
  for (std::size_t s = 0; s < nsites; ++s) {
    double rho0 = 0.0, rho1 = 0.0, mag_f = 0.0;
    double phi0 = 0.0, phi1 = 0.0, mag_g = 0.0;
    std::array<double, 3> m0{}, m1{};
    for (std::size_t i = 0; i < lb::kQ; ++i) {
      rho0 += before.f(i, s);
      rho1 += after.f(i, s);
      mag_f += std::max(std::abs(before.f(i, s)), std::abs(after.f(i, s)));
      phi0 += before.g(i, s);
      phi1 += after.g(i, s);
      mag_g += std::max(std::abs(before.g(i, s)), std::abs(after.g(i, s)));
      for (std::size_t d = 0; d < 3; ++d) {
        m0[d] += before.f(i, s) * model.cv[i][d];
        m1[d] += after.f(i, s) * model.cv[i][d];
      }
    }
    worst.rho = std::max(worst.rho, std::abs(rho1 - rho0) / mag_f);
    for (std::size_t d = 0; d < 3; ++d) {
      worst.momentum = std::max(worst.momentum, std::abs(m1[d] - m0[d]) / mag_f);
    }
    if (mag_g > 0.0) {
      worst.phi = std::max(worst.phi, std::abs(phi1 - phi0) / mag_g);
    }
  }
  return worst;
}

CheckResult verify_conservation(const LatticeShape& shape, std::uint64_t seed, double rel_tol) {
  const auto model = lb::make_d3q19();
  const auto before = random_binary_state(shape, seed);
  const auto after = run_binary_collision(before, model, RunConfig{});
  const auto err = conservation_error(before, after, model);
  std::ostringstream os;
  os << "max relative error rho " << err.rho << ", momentum " << err.momentum << ", phi "
     << err.phi << " (tolerance " << rel_tol << ")";
  return {"conservation", err.rho <= rel_tol && err.momentum <= rel_tol && err.phi <= rel_tol,
          os.str()};
}

CheckResult verify_scale_oracle(const LatticeShape& shape, std::uint64_t seed, double a) {
  const auto in = random_vector_field(shape, seed);
  const auto out = run_scale(in, a, RunConfig{Backend::threaded, 8, 2});
  Field expect(in.descriptor());
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t s = 0; s < in.nsites(); ++s) {
      expect(c, s) = a * in(c, s);
    }
  }
  const bool ok = field_bitwise_equal(out, expect);
  return {"oracle", ok,
          ok ? "scale output bitwise equal to scalar loop"
             : "scale output differs from scalar loop"};
}

}  // namespace ldp
