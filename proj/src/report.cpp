#include "slopecls/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace slopecls {

namespace {

std::string num(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string fixed(double value, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

const char* method_label(Method method) {
  switch (method) {
    case Method::L1:
      return "L1";
    case Method::L2:
      return "L2";
    case Method::Slope:
      return "Slope";
  }
  return "?";
}

const char* loss_label(LossFamily family) {
  return family == LossFamily::Hinge ? "SVM" : "LR";
}

void spec_columns(std::ostream& out, const ExperimentSpec& spec) {
  out << spec.n << ',' << spec.p << ',' << spec.k_star << ',' << num(spec.rho)
      << ',' << spec.seed;
}

template <class Report>
void emit_to_file(const Report& report, ReportFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit_report(report, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

void table_csv(const MetricsReport& report, std::ostream& out) {
  out << kTableCsvHeader << '\n';
  for (const auto& agg : report.aggregates) {
    for (const auto& row : report.rows) {
      if (row.method != agg.method || row.loss != agg.loss ||
          row.spec.n != agg.spec.n || row.spec.p != agg.spec.p ||
          row.spec.k_star != agg.spec.k_star || row.spec.rho != agg.spec.rho ||
          row.spec.seed != agg.spec.seed) {
        continue;
      }
      out << "0," << to_string(row.method) << ',' << task_name(row.loss) << ',';
      spec_columns(out, row.spec);
      out << ',' << row.replication << ",1," << num(row.l2_error) << ",,"
          << num(row.misclassification) << ",," << num(row.selected_eta) << ','
          << (row.degenerate ? 1 : 0) << '\n';
    }
    out << "1," << to_string(agg.method) << ',' << task_name(agg.loss) << ',';
    spec_columns(out, agg.spec);
    out << ",," << agg.count << ',' << num(agg.l2_error) << ','
        << num(agg.l2_error_se) << ',' << num(agg.misclassification) << ','
        << num(agg.misclassification_se) << ',' << num(agg.selected_eta) << ','
        << agg.degenerate << '\n';
  }
}

void table_markdown(const MetricsReport& report, std::ostream& out) {
  // Columns: one (L2-E, Misc) pair per distinct spec; rows: (method, loss).
  std::vector<ExperimentSpec> specs;
  struct Key {
    Method method;
    LossFamily loss;
  };
  std::vector<Key> keys;
  for (const auto& agg : report.aggregates) {
    bool seen = false;
    for (const auto& s : specs) {
      seen = seen || (s.n == agg.spec.n && s.p == agg.spec.p &&
                      s.k_star == agg.spec.k_star && s.rho == agg.spec.rho);
    }
    if (!seen) specs.push_back(agg.spec);
    bool key_seen = false;
    for (const auto& k : keys) {
      key_seen = key_seen || (k.method == agg.method && k.loss == agg.loss);
    }
    if (!key_seen) keys.push_back({agg.method, agg.loss});
  }

  out << "| Method |";
  for (const auto& s : specs) {
    out << " L2-E (n=" << s.n << ", p=" << s.p << ") | Misc % (n=" << s.n
        << ", p=" << s.p << ") |";
  }
  out << "\n|---|";
  for (std::size_t i = 0; i < specs.size(); ++i) out << "---|---|";
  out << '\n';
  for (const auto& key : keys) {
    out << "| " << method_label(key.method) << ' ' << loss_label(key.loss)
        << " |";
    for (const auto& s : specs) {
      const MetricsAggregate* match = nullptr;
      for (const auto& agg : report.aggregates) {
        if (agg.method == key.method && agg.loss == key.loss &&
            agg.spec.n == s.n && agg.spec.p == s.p &&
            agg.spec.k_star == s.k_star && agg.spec.rho == s.rho) {
          match = &agg;
        }
      }
      if (match == nullptr) {
        out << " - | - |";
      } else {
        out << ' ' << fixed(match->l2_error, 2) << " | "
            << fixed(100.0 * match->misclassification, 2) << " |";
      }
    }
    out << '\n';
  }
}

void rate_csv(const RateCheckReport& report, std::ostream& out) {
  out << kRateCsvHeader << '\n';
  for (const auto& pt : report.points) {
    out << "point," << to_string(report.method) << ','
        << task_name(report.loss) << ',' << pt.point.n << ',' << pt.point.p
        << ',' << pt.point.k_star << ',' << num(pt.rate) << ','
        << num(pt.mean_error) << ',' << num(pt.error_se) << ','
        << num(pt.mean_misclassification) << ',' << report.replications
        << ",,\n";
  }
  if (!report.points.empty()) {
    out << "fit," << to_string(report.method) << ',' << task_name(report.loss)
        << ",,,,,,,," << report.replications << ',' << num(report.slope) << ','
        << num(report.slope_stderr) << '\n';
  }
}

void rate_markdown(const RateCheckReport& report, std::ostream& out) {
  out << "| n | p | k* | (k*/n) log(p/k*) | mean L2-E | se | Misc % |\n"
      << "|---|---|---|---|---|---|---|\n";
  for (const auto& pt : report.points) {
    out << "| " << pt.point.n << " | " << pt.point.p << " | " << pt.point.k_star
        << " | " << fixed(pt.rate, 4) << " | " << fixed(pt.mean_error, 4)
        << " | " << fixed(pt.error_se, 4) << " | "
        << fixed(100.0 * pt.mean_misclassification, 2) << " |\n";
  }
  out << "\nlog-log slope: " << fixed(report.slope, 3) << " (se "
      << fixed(report.slope_stderr, 3) << ")\n";
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  throw std::invalid_argument("unknown report format '" + name + "'");
}

void emit_report(const MetricsReport& report, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::Csv) {
    table_csv(report, out);
  } else {
    table_markdown(report, out);
  }
}

void emit_report(const RateCheckReport& report, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::Csv) {
    rate_csv(report, out);
  } else {
    rate_markdown(report, out);
  }
}

void emit_report(const MetricsReport& report, ReportFormat format,
                 const std::string& path) {
  emit_to_file(report, format, path);
}

void emit_report(const RateCheckReport& report, ReportFormat format,
                 const std::string& path) {
  emit_to_file(report, format, path);
}

}  // namespace slopecls
