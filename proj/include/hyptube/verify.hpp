#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyptube {

struct VerifyOptions {
  std::uint64_t seed = 20261014;
  double tol_scale = 1.0;
  std::optional<double> tolerance_override;
};

struct CheckRow {
  std::string check_id;
  long samples;
  double max_error;
  double tolerance;
  bool pass;
};

/// Runs the identity and oracle checks of every numerical module.
std::vector<CheckRow> run_verify(const VerifyOptions& opt = {});

/// Deterministic uniform generator (splitmix64) shared by the checks.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace hyptube
