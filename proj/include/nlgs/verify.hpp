#ifndef NLGS_VERIFY_HPP
#define NLGS_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlgs {

/// One quantitative check: `actual` compared against `expected` with `tolerance`.
struct Check {
    enum class Relation { at_most, at_least, near };

    std::string name;
    Relation relation = Relation::at_most;
    double actual = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

Check check_at_most(std::string name, double actual, double bound, double tolerance = 0.0);
Check check_at_least(std::string name, double actual, double bound, double tolerance = 0.0);
/// |actual - expected| <= tolerance
Check check_near(std::string name, double actual, double expected, double tolerance);
/// Boolean property recorded as 1 (true) against an expected 1.
Check check_true(std::string name, bool holds);

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    std::string error; ///< set when the criterion could not be evaluated
    double seconds = 0.0;

    bool passed() const noexcept;
};

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const CriterionResult& r);
/// "PASS [k] title (1.2 s)" or "FAIL ..." followed by the failing checks.
std::string summary_line(const CriterionResult& r);

CriterionResult verify_contraction();          ///< 1
CriterionResult verify_dirichlet();            ///< 2
CriterionResult verify_quadratic_identity();   ///< 3
CriterionResult verify_apriori_bounds();       ///< 4
CriterionResult verify_stabilization();        ///< 5
CriterionResult verify_steady_states();        ///< 6
CriterionResult verify_energy_dissipation();   ///< 7
CriterionResult verify_diffusive_limit();      ///< 8
CriterionResult verify_dissipation_functionals(); ///< 9
CriterionResult verify_fast_path();            ///< 10

/// Runs criterion `id` (1 to 10), converting exceptions into a failed result.
CriterionResult run_criterion(int id);

/// Criteria making up a suite: operator {1,3,9,10}, dirichlet {2},
/// bounds {4,7}, decay {5}, steady {6}, limit {8}, all {1..10}.
/// Throws std::invalid_argument for an unknown suite name.
std::vector<int> suite_criteria(const std::string& suite);
const std::vector<std::string>& suite_names();

} // namespace nlgs

#endif
