#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "report.hpp"

namespace ncg::cli {

/// A resolved request: inputs and header are known before any computation,
/// so together they key the cache.
struct Job {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json header;
  std::function<Report()> compute;
};

struct AlgebraArgs {
  std::string ref;
  std::vector<std::string> params;
  std::optional<std::string> field;
};

struct WindowArgs {
  int n_max = 4;
  std::optional<int> w_min;
  std::optional<int> w_max;
  int truncation = 3;
};

Job validate_job(const AlgebraArgs &a);
Job hh_job(const AlgebraArgs &a, const WindowArgs &w);
Job hc_job(const AlgebraArgs &a, const WindowArgs &w);
Job hp_job(const AlgebraArgs &a, const WindowArgs &w);
Job filtration_job(const AlgebraArgs &a, const WindowArgs &w);
Job degeneration_job(const AlgebraArgs &a, const WindowArgs &w);
Job charp_job(const AlgebraArgs &a, const WindowArgs &w);

/// Either an idempotent file, or an algebra with a dense coefficient list.
Job chern_job(const std::optional<std::string> &idempotent_file, const AlgebraArgs &a,
              const std::optional<std::string> &coefficients, int truncation);
Job ppower_job(const AlgebraArgs &a);
Job graded_job(int dim_v, int n, const std::optional<std::string> &field);

struct PoissonArgs {
  std::string bivector;
  std::optional<std::string> field;
  std::optional<std::string> hbar;
  int degree = 4;
  std::vector<std::string> forms; ///< bracket: f, g; lie: the form
};
Job poisson_job(const std::string &sub, const PoissonArgs &p);

/// bimodule: "zero", "unit" or a path to an "ncg-bimodule/1" file with left
/// algebra b and right algebra a.
Job glue_job(const AlgebraArgs &a, const AlgebraArgs &b, const std::string &bimodule, int n_max);
Job catalogue_job(const std::optional<std::string> &field);

} // namespace ncg::cli
