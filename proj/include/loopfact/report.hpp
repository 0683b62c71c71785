#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "loopfact/loop_io.hpp"
#include "loopfact/measures.hpp"

namespace loopfact {

struct RunConfig {
    std::string command = "verify";
    double tol = 1e-9;
    int trunc = 32;
    long long samples = 100000;
    std::uint64_t seed = 12345;
    std::string in_path, out_path;
    std::string suite = "all";
    void validate() const;
};

// One verification record.  `anchor` names the identity being checked (or
// "plumbing" for infrastructure checks).  Informational records never fail.
struct CheckRecord {
    std::string name;
    std::string anchor = "plumbing";
    std::string inputs;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool informational = false;
};

CheckRecord make_check(std::string name, std::string anchor, std::string inputs,
                       double expected, double actual, double tolerance);

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::string suite;
    std::vector<CheckRecord> records;
    std::vector<std::pair<std::string, std::string>> artifacts;  // name -> json
    int failures() const;
    bool all_pass() const { return failures() == 0; }
    // Line-delimited records, artifact lines, then a summary object.
    // Numbers carry 17 significant digits so identical runs diff clean.
    std::string render() const;
};

std::string format_g17(double v);

std::vector<std::string> suite_names();
std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg);

// Runs the requested suites concurrently and merges the records in declared
// suite order, independent of completion order.
Report run_verify(const RunConfig& cfg);

Report run_factor(const RunConfig& cfg, const FactorInput& in);
Report run_integrate(const RunConfig& cfg, const ExponentVector& q);
Report run_iwasawa(const RunConfig& cfg, const LaurentPoly& f);
Report run_weyl(const RunConfig& cfg, const AffineWord& word);

}  // namespace loopfact
