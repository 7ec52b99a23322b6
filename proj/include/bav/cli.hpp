#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bav/errors.hpp"

namespace bav::cli {

/// Process exit codes, one per failure class.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInputError = 2,        // bad config, malformed or inconsistent input files
    kIntegrationError = 3,  // origin singularity, step-size underflow
    kBranchError = 4,       // ambiguous winding while mapping a trajectory
    kCheckFailed = 5,       // a verification check failed (report still written)
};

int exit_code_for(Errc e);

struct SimulateArgs {
    std::filesystem::path config;
    std::optional<std::filesystem::path> out;
};

struct DualizeArgs {
    std::filesystem::path in;
    std::filesystem::path out;
    std::optional<std::filesystem::path> params;  // JSON overrides, e.g. {"k_dual": -0.5}
};

struct VerifyArgs {
    std::filesystem::path original;
    std::filesystem::path dual;
    std::filesystem::path report;
};

struct DemoArgs {
    std::string scenario = "hooke-kepler";
    double nu = 2.0;
    double eccentricity = 0.6;  // target eccentricity of the dual orbit for nu = 2
    std::filesystem::path out_dir = ".";
};

int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int run_dualize(const DualizeArgs& args, std::ostream& out, std::ostream& err);
int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int run_demo(const DemoArgs& args, std::ostream& out, std::ostream& err);

}  // namespace bav::cli
