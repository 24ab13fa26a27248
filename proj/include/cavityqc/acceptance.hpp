// acceptance.hpp — End-to-end acceptance checks with pinned tolerances.
//
// Criteria 1 to 11 are computed here; criterion 12 (two selftest runs give
// byte-identical reports) needs two runs and lives in the caller. The report
// carries no timings so it is a pure function of the seed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cavityqc {

struct CriterionResult {
    int id{0};
    std::string name;
    bool pass{false};
    std::string detail;
};

struct AcceptanceReport {
    std::uint64_t seed{0};
    std::vector<CriterionResult> results;

    bool all_passed() const;
    // One "criterion <id> PASS|FAIL <name>: <detail>" line per result.
    std::string format() const;
};

namespace tolerance {
inline constexpr double kGateIdentity = 1e-10;
inline constexpr double kSpectrum = 1e-10;
inline constexpr double kDispersion = 1e-10;
inline constexpr double kBlochUnitarity = 1e-12;
inline constexpr double kClassification = 1e-10;
inline constexpr double kCouplingLow = 0.495;
inline constexpr double kCouplingHigh = 0.505;
inline constexpr double kScalingLow = 25.0;
inline constexpr double kScalingHigh = 400.0;
inline constexpr double kFullStackFidelity = 0.99;
inline constexpr double kFullStackLeakage = 0.01;
inline constexpr double kLindbladVsUnitary = 1e-6;
inline constexpr double kSurvival = 0.05;
inline constexpr double kDampedCavity = 1e-6;
inline constexpr double kControlledU = 1e-8;
inline constexpr double kCompilerOverlap = 1e-8;
}  // namespace tolerance

// Runs criteria 1 to 11. Exceptions inside a criterion mark it failed with the
// message as detail.
AcceptanceReport run_acceptance_suite(std::uint64_t seed);

}  // namespace cavityqc
