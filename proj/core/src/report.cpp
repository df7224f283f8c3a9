#include "bergman/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bergman::report {

std::string format_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string format_log(const LogScalar& x) { return x.to_string(); }

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::comment(const std::string& line) {
  comments_ += "# " + line + "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw std::invalid_argument("CsvWriter: cell count");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    body_ += cells[i];
    body_ += i + 1 < cells.size() ? "," : "\n";
  }
}

std::string CsvWriter::str() const {
  std::string out = comments_;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    out += columns_[i];
    out += i + 1 < columns_.size() ? "," : "\n";
  }
  return out + body_;
}

std::string ratio_series_csv(const asymptotics::RatioSeries& series) {
  CsvWriter w({"log_t", "d", "dstar", "d1eps", "d2eps", "lower", "upper", "center",
               "certified"});
  w.comment(series.kind + " ratio brackets, eps=" + format_number(series.eps) +
            " delta=" + format_number(series.delta));
  w.comment("target=" + format_number(series.target));
  w.comment("lower/upper are certified bounds where certified=1; center is a "
            "geometric-mean style estimate and is never certified");
  for (const auto& r : series.records) {
    w.row({format_number(r.log_t), format_log(r.d), format_number(r.dstar),
           format_number(r.d1eps), format_number(r.d2eps), format_number(r.lower),
           format_number(r.upper), format_number(r.center), r.certified ? "1" : "0"});
  }
  return w.str();
}

std::string limit_table_csv(const asymptotics::StreamLimitTable& table) {
  std::vector<std::string> cols = {"log_t",       "phi_over_d", "phi_prime_over_d",
                                   "p2_over_dstar", "d_over_dstar", "d_over_dstar_pow",
                                   "r_over_p2",   "cone_ok"};
  for (double e : table.eps_list) {
    cols.push_back("dstar_over_d1_eps" + format_number(e));
    cols.push_back("dstar_over_d2_eps" + format_number(e));
  }
  CsvWriter w(cols);
  w.comment("boundary-scale limit diagnostics along the stream");
  for (const auto& r : table.rows) {
    std::vector<std::string> cells = {
        format_number(r.log_t),       format_log(r.phi_over_d),
        format_log(r.phi_prime_over_d), format_log(r.p2_over_dstar),
        format_log(r.d_over_dstar),   format_log(r.d_over_dstar_pow),
        format_number(r.r_over_p2),   r.cone_ok ? "1" : "0"};
    for (std::size_t i = 0; i < table.eps_list.size(); ++i) {
      cells.push_back(format_number(r.dstar_over_d1[i]));
      cells.push_back(format_number(r.dstar_over_d2[i]));
    }
    w.row(cells);
  }
  return w.str();
}

std::string counterexample_csv(const asymptotics::CounterexampleReport& rep) {
  std::vector<std::string> cols = {"log_t", "d1", "dstar", "ratio"};
  for (double u : rep.u2) cols.push_back("quotient_u" + format_number(u));
  CsvWriter w(cols);
  w.comment("two-scale counterexample: d1 from phi(d1^2)=sqrt(t), dstar from "
            "phi(dstar^2)=t; quotient = phi(|dstar*u2|^2)/sqrt(phi(dstar^2))");
  for (std::size_t i = 0; i < rep.log_t.size(); ++i) {
    std::vector<std::string> cells = {format_number(rep.log_t[i]), format_number(rep.d1[i]),
                                      format_number(rep.dstar[i]), format_number(rep.ratio[i])};
    for (const auto& q : rep.quotient[i]) cells.push_back(format_log(q));
    w.row(cells);
  }
  return w.str();
}

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<PlotSeries>& series) {
  const int W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  const auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title << "</text>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " << H / 2
      << ")\">" << y_label << "</text>\n";
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
      << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[64];
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    std::snprintf(buf, sizeof(buf), "%.4g", xv);
    svg << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 16
        << "\" text-anchor=\"middle\" font-size=\"10\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof(buf), "%.4g", yv);
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 3
        << "\" text-anchor=\"end\" font-size=\"10\">" << buf << "</text>\n";
  }
  int ci = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << colors[ci % 5] << "\" stroke-width=\"1.5\" "
        << "points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 14 * ci
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << colors[ci % 5] << "\">"
        << s.label << "</text>\n";
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string ratio_series_svg(const asymptotics::RatioSeries& series) {
  PlotSeries lower{"lower", {}, {}}, upper{"upper", {}, {}}, center{"center", {}, {}};
  for (const auto& r : series.records) {
    if (!r.certified) continue;
    lower.x.push_back(r.log_t);
    lower.y.push_back(r.lower);
    upper.x.push_back(r.log_t);
    upper.y.push_back(r.upper);
    center.x.push_back(r.log_t);
    center.y.push_back(r.center);
  }
  return svg_line_plot(series.kind + " ratio bracket (eps=" + format_number(series.eps) +
                           ", delta=" + format_number(series.delta) + ")",
                       "log t", "normalized ratio", {lower, center, upper});
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace bergman::report
