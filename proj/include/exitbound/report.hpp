#pragma once

#include "exitbound/config.hpp"
#include "exitbound/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exitbound {

struct CertificateRow {
    std::string quantity;
    Point point;
    std::optional<BoundCertificate> certificate;
    std::string note;
};

struct EstimateRow {
    std::string quantity;
    Point point;
    McEstimate estimate;
};

struct RunReport {
    std::vector<CertificateRow> certificates;
    std::vector<EstimateRow> estimates;
    std::vector<VerdictRow> verdicts;
    std::vector<std::string> files;
    std::vector<std::string> warnings;
    std::size_t failures = 0;
    int exit_code = 0;
};

// Certificates of the configured quantities at every point; errors become rows with a note.
std::vector<CertificateRow> certify_points(const RunConfig& config);

// Monte Carlo estimates of the configured quantities at every point.
std::vector<EstimateRow> simulate_points(const RunConfig& config);

// Runs the configured mode and writes the report files into config.out_dir.
RunReport run(const RunConfig& config);

// Number formatting used by every report file: 17 significant digits.
std::string format_number(double v);

} // namespace exitbound
