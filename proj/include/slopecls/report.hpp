#pragma once

#include <iosfwd>
#include <string>

#include "slopecls/experiments.hpp"

namespace slopecls {

enum class ReportFormat { Csv, Markdown };

/// "csv" | "markdown"; throws std::invalid_argument otherwise.
ReportFormat parse_format(const std::string& name);

/// Column order of the table CSV. Replication rows carry aggregate=0 and
/// count=1; each (method, loss, spec) group is followed by one aggregate=1 row
/// holding means, standard errors, the number of replications in `count`, an
/// empty `replication` field and the number of degenerate fits in
/// `degenerate`.
inline constexpr const char* kTableCsvHeader =
    "aggregate,method,loss,n,p,k_star,rho,seed,replication,count,l2_error,"
    "l2_error_se,misclassification,misclassification_se,selected_eta,"
    "degenerate";

/// Column order of the rate-check CSV: one row per grid point, then a
/// `fit` row with the log-log slope in `slope` and its standard error.
inline constexpr const char* kRateCsvHeader =
    "kind,method,loss,n,p,k_star,rate,mean_l2_error,l2_error_se,"
    "mean_misclassification,replications,slope,slope_stderr";

void emit_report(const MetricsReport& report, ReportFormat format,
                 std::ostream& out);
void emit_report(const RateCheckReport& report, ReportFormat format,
                 std::ostream& out);

/// Throws std::runtime_error on I/O failure.
void emit_report(const MetricsReport& report, ReportFormat format,
                 const std::string& path);
void emit_report(const RateCheckReport& report, ReportFormat format,
                 const std::string& path);

}  // namespace slopecls
