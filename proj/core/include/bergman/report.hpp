#pragma once

#include <string>
#include <vector>

#include "bergman/asymptotics.hpp"
#include "bergman/log_scalar.hpp"

namespace bergman::report {

/// 15 significant digits, '.' decimal separator.
std::string format_number(double x);
/// Plain number when representable, "exp(<log>)" otherwise.
std::string format_log(const LogScalar& x);

/// Comma-separated values with LF line endings.  Comment lines (prefixed
/// "# ") document the columns; the header row follows them.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void comment(const std::string& line);
  void row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::string comments_;
  std::string body_;
};

std::string ratio_series_csv(const asymptotics::RatioSeries& series);
std::string limit_table_csv(const asymptotics::StreamLimitTable& table);
std::string counterexample_csv(const asymptotics::CounterexampleReport& rep);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal standalone SVG line plot.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<PlotSeries>& series);

std::string ratio_series_svg(const asymptotics::RatioSeries& series);

void write_file(const std::string& path, const std::string& content);

}  // namespace bergman::report
