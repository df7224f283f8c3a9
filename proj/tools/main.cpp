#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <bergman/asymptotics.hpp>
#include <bergman/extremal.hpp>
#include <bergman/geometry.hpp>
#include <bergman/kernel_jet.hpp>
#include <bergman/report.hpp>
#include <bergman/verify.hpp>

namespace {

using bergman::FlatProfile;
using bergman::LogScalar;
using bergman::geometry::ConeStream;
using bergman::geometry::ModelDomain;
using bergman::geometry::TGrid;
using bergman::kernel::ReinhardtDomain;
using Complex = std::complex<double>;

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitParse = 2;
constexpr int kExitCompute = 3;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "0.3,-0.1,0.2+0.4i" -> complex vector; entries are "a", "bi", or "a+bi".
Eigen::VectorXcd parse_complex_vector(const std::string& text) {
  std::vector<Complex> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ParseError("empty vector entry");
    double re = 0.0, im = 0.0;
    if (item.back() == 'i' || item.back() == 'I') {
      const std::string body = item.substr(0, item.size() - 1);
      // split off the real part at the last +/- that is not an exponent sign
      std::size_t split = std::string::npos;
      for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') &&
            body[p - 1] != 'e' && body[p - 1] != 'E') {
          split = p;
          break;
        }
      }
      try {
        if (split == std::string::npos) {
          im = std::stod(body);
        } else {
          re = std::stod(body.substr(0, split));
          im = std::stod(body.substr(split));
        }
      } catch (...) {
        throw ParseError("bad complex entry: " + item);
      }
    } else {
      try {
        re = std::stod(item);
      } catch (...) {
        throw ParseError("bad number: " + item);
      }
    }
    entries.emplace_back(re, im);
  }
  Eigen::VectorXcd v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v[i] = entries[i];
  return v;
}

std::string slurp_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot read file: " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

TGrid parse_grid(const std::string& grid_json, double logt, int points) {
  if (!grid_json.empty()) return TGrid::parse(slurp_arg(grid_json));
  if (logt < 0.0) {
    TGrid g;
    g.log_t_start = logt;
    g.log_t_end = logt;
    g.points = points > 0 ? points : 1;
    if (g.points > 1) g.log_t_end = logt * 40.0;
    return g;
  }
  return TGrid{};
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    bergman::report::write_file(out, content);
  }
}

struct CommonFlags {
  std::string domain = "prod:disc,ball:1";
  std::string profile = "exp:1";
  std::string stream;  // JSON or @file
  std::string point;
  std::string direction;
  std::string grid_json;
  std::string out;
  std::string format = "csv";
  double logt = 0.0;
  double epsilon = 0.5;
  double delta = 0.1;
  double delta0 = 0.1;
  int dim_n = 1;
  int truncation = 60;
  int samples = 10000;
  int points = 0;
  int order = 0;
  std::uint64_t seed = 20240817;
  int jobs = 0;
  double tolerance = 1e-8;
  std::string map_spec = "dilation:0.5";
  std::string u2 = "0.5,1,1.2,1.4,1.45,1.6,2";
};

void add_common(CLI::App* cmd, CommonFlags& f, const nlohmann::json& cfg) {
  const auto d = [&cfg](const char* key, auto fallback) {
    using T = decltype(fallback);
    return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
  };
  f.domain = d("domain", f.domain);
  f.profile = d("profile", f.profile);
  f.stream = d("stream", f.stream);
  f.grid_json = d("t_grid", f.grid_json);
  f.truncation = d("truncation", f.truncation);
  f.epsilon = d("epsilon", f.epsilon);
  f.delta = d("delta", f.delta);
  f.delta0 = d("delta0", f.delta0);
  f.samples = d("samples", f.samples);
  f.seed = d("seed", f.seed);
  f.jobs = d("jobs", f.jobs);
  f.out = d("out", f.out);
  f.format = d("format", f.format);
  cmd->add_option("--domain", f.domain, "Reinhardt domain spec");
  cmd->add_option("--profile", f.profile, "boundary profile spec, e.g. exp:1");
  cmd->add_option("--stream", f.stream, "stream JSON (inline or @file)");
  cmd->add_option("--point", f.point, "complex point, e.g. 0.2,0.1+0.3i");
  cmd->add_option("--direction", f.direction, "complex direction");
  cmd->add_option("--truncation", f.truncation, "series truncation degree");
  cmd->add_option("--epsilon", f.epsilon, "region parameter epsilon");
  cmd->add_option("--delta", f.delta, "inner shrink factor delta");
  cmd->add_option("--delta0", f.delta0, "model neighborhood scale delta0");
  cmd->add_option("--dim", f.dim_n, "tangential complex dimension n");
  cmd->add_option("--logt", f.logt, "single log t value");
  cmd->add_option("--t-grid", f.grid_json, "t-grid JSON (inline or @file)");
  cmd->add_option("--points", f.points, "grid point count when --logt is used");
  cmd->add_option("--samples", f.samples, "sample count for inclusion checks");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--jobs", f.jobs, "worker threads (0 = cores)");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  cmd->add_option("--tolerance", f.tolerance, "pass/fail tolerance");
}

ModelDomain model_domain(const CommonFlags& f) {
  ModelDomain d;
  d.n = f.dim_n;
  d.profile = FlatProfile::parse(f.profile);
  d.delta0 = f.delta0;
  return d;
}

ConeStream stream_of(const CommonFlags& f, int n) {
  if (f.stream.empty()) {
    ConeStream s;
    s.kind = ConeStream::Kind::kNormal;
    return s;
  }
  return ConeStream::parse(slurp_arg(f.stream), n);
}

void print_value(const char* label, double v) {
  std::printf("%s = %s\n", label, bergman::report::format_number(v).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman kernel asymptotics toolkit"};
  app.require_subcommand(1);

  // JSON config provides defaults; explicit flags win.
  nlohmann::json cfg = nlohmann::json::object();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config with flag defaults");
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) {
        std::fprintf(stderr, "cannot read config %s\n", argv[i + 1]);
        return kExitParse;
      }
      try {
        in >> cfg;
      } catch (const std::exception& e) {
        std::fprintf(stderr, "config parse error: %s\n", e.what());
        return kExitParse;
      }
    }
  }

  CommonFlags f;
  auto* c_kernel = app.add_subcommand("kernel", "diagonal kernel value at a point");
  auto* c_metric = app.add_subcommand("metric", "metric length of a direction");
  auto* c_curv = app.add_subcommand("curvature", "holomorphic sectional curvature");
  auto* c_ext = app.add_subcommand("extremal", "least-norm integral I_j");
  c_ext->add_option("--order", f.order, "jet order j in {0,1,2}")->required();
  auto* c_fuchs = app.add_subcommand("fuchs", "reciprocity identity residuals");
  auto* c_tr = app.add_subcommand("transform", "transformation identity residuals");
  c_tr->add_option("--map", f.map_spec, "dilation:<l> | unitary:<theta> | discauto:<a>");
  auto* c_limits = app.add_subcommand("limits", "stream limit diagnostics table");
  auto* c_sw = app.add_subcommand("sandwich", "scaled-region inclusion check");
  auto* c_ratios = app.add_subcommand("ratios", "certified normalized ratio brackets");
  std::string ratio_kind = "kernel";
  c_ratios->add_option("--kind", ratio_kind, "kernel | metric | curvature")
      ->check(CLI::IsMember({"kernel", "metric", "curvature"}));
  auto* c_cex = app.add_subcommand("counterexample", "two-scale quotient dichotomy");
  c_cex->add_option("--u2", f.u2, "comma-separated |u2| grid");
  auto* c_verify = app.add_subcommand("verify", "full acceptance suite");

  for (auto* cmd : {c_kernel, c_metric, c_curv, c_ext, c_fuchs, c_tr, c_limits, c_sw, c_ratios,
                    c_cex, c_verify}) {
    add_common(cmd, f, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*c_kernel || *c_metric || *c_curv || *c_ext || *c_fuchs) {
      const auto dom = ReinhardtDomain::parse(f.domain);
      Eigen::VectorXcd z;
      try {
        z = parse_complex_vector(f.point);
      } catch (const ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitParse;
      }
      Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(dom.dim());
      if (!f.direction.empty()) xi = parse_complex_vector(f.direction);
      if (*c_kernel) {
        print_value("kappa", bergman::kernel::kernel_value(dom, z, f.truncation));
      } else if (*c_metric) {
        print_value("B", bergman::kernel::metric_length(dom, z, xi, f.truncation));
      } else if (*c_curv) {
        print_value("H", bergman::kernel::curvature_value(dom, z, xi, f.truncation));
      } else if (*c_ext) {
        const auto r = bergman::kernel::extremal(dom, z, xi, f.order, f.truncation);
        std::printf("I%d = %s (constraint residual %s)\n", f.order,
                    bergman::report::format_number(r.value).c_str(),
                    bergman::report::format_number(r.constraint_residual).c_str());
      } else {
        const auto r = bergman::kernel::fuchs_check(dom, z, xi, f.truncation);
        std::printf("residuals: kernel %s, metric %s, curvature %s\n",
                    bergman::report::format_number(r.kernel).c_str(),
                    bergman::report::format_number(r.metric).c_str(),
                    bergman::report::format_number(r.curvature).c_str());
        if (r.max() > f.tolerance) return kExitTolerance;
      }
      return kExitOk;
    }

    if (*c_tr) {
      const auto dom = ReinhardtDomain::parse(f.domain);
      Eigen::VectorXcd z = parse_complex_vector(f.point);
      Eigen::VectorXcd xi = f.direction.empty()
                                ? Eigen::VectorXcd(Eigen::VectorXcd::Ones(dom.dim()))
                                : parse_complex_vector(f.direction);
      bergman::kernel::TransformResiduals r;
      const auto colon = f.map_spec.find(':');
      const std::string kind = f.map_spec.substr(0, colon);
      const double arg = colon == std::string::npos
                             ? 0.0
                             : std::stod(f.map_spec.substr(colon + 1));
      if (kind == "dilation") {
        const auto d1 = ReinhardtDomain::parse("scale:" + std::to_string(arg) + ":" + f.domain);
        const auto map = bergman::kernel::Biholomorphism::dilation(
            std::vector<double>(dom.dim(), 1.0 / arg));
        r = bergman::kernel::transform_check(map, d1, dom, z * arg, xi, f.truncation);
      } else if (kind == "unitary") {
        Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(dom.dim(), dom.dim());
        if (dom.dim() >= 2) {
          U(0, 0) = U(1, 1) = std::cos(arg);
          U(0, 1) = -std::sin(arg);
          U(1, 0) = std::sin(arg);
        } else {
          U(0, 0) = std::polar(1.0, arg);
        }
        r = bergman::kernel::transform_check(bergman::kernel::Biholomorphism::unitary(U), dom,
                                             dom, z, xi, f.truncation);
      } else if (kind == "discauto") {
        r = bergman::kernel::transform_check(
            bergman::kernel::Biholomorphism::disc_automorphism(arg, dom.dim()), dom, dom, z,
            xi, f.truncation);
      } else {
        std::fprintf(stderr, "unknown map kind: %s\n", kind.c_str());
        return kExitParse;
      }
      std::printf("residuals: I0 %s, I1 %s, I2 %s\n",
                  bergman::report::format_number(r.i0).c_str(),
                  bergman::report::format_number(r.i1).c_str(),
                  bergman::report::format_number(r.i2).c_str());
      return r.max() > f.tolerance ? kExitTolerance : kExitOk;
    }

    if (*c_limits) {
      const auto domain = model_domain(f);
      const auto stream = stream_of(f, domain.n);
      const auto grid = parse_grid(f.grid_json, f.logt, f.points);
      const auto table = bergman::asymptotics::limit_series(
          domain, stream, grid, {1.0, 0.5, 0.25}, f.jobs > 0 ? f.jobs : 1);
      emit(f.out, bergman::report::limit_table_csv(table));
      return kExitOk;
    }

    if (*c_sw) {
      const auto domain = model_domain(f);
      const auto stream = stream_of(f, domain.n);
      if (!(f.logt < 0.0)) {
        std::fprintf(stderr, "sandwich requires --logt < 0\n");
        return kExitParse;
      }
      const auto frame = bergman::geometry::make_frame(domain, stream, f.logt);
      const auto rep =
          bergman::geometry::sandwich_check(frame, f.epsilon, f.delta, f.samples, f.seed);
      std::printf("inward: %d/%d violations, outward: %d/%d violations%s\n",
                  rep.violations_in, rep.samples_in, rep.violations_out, rep.samples_out,
                  rep.starved ? " (sampling starved)" : "");
      return (rep.violations_in == 0 && rep.violations_out == 0 && !rep.starved)
                 ? kExitOk
                 : kExitTolerance;
    }

    if (*c_ratios) {
      const auto domain = model_domain(f);
      const auto stream = stream_of(f, domain.n);
      const auto grid = parse_grid(f.grid_json, f.logt, f.points);
      bergman::asymptotics::RatioOptions ro;
      ro.truncation = f.truncation;
      ro.certify_samples = f.samples;
      ro.seed = f.seed;
      ro.jobs = f.jobs > 0 ? f.jobs : 1;
      bergman::asymptotics::RatioSeries series;
      if (ratio_kind == "kernel") {
        series = bergman::asymptotics::kernel_ratio_bounds(domain, stream, f.epsilon, f.delta,
                                                           grid, ro);
      } else {
        Eigen::VectorXcd xi = f.direction.empty()
                                  ? Eigen::VectorXcd(Eigen::VectorXcd::Unit(domain.n + 1, 0))
                                  : parse_complex_vector(f.direction);
        series = ratio_kind == "metric"
                     ? bergman::asymptotics::metric_ratio_bounds(domain, stream, xi, f.epsilon,
                                                                 f.delta, grid, ro)
                     : bergman::asymptotics::curvature_ratio_bounds(domain, stream, xi,
                                                                    f.epsilon, f.delta, grid, ro);
      }
      emit(f.out, f.format == "svg" ? bergman::report::ratio_series_svg(series)
                                    : bergman::report::ratio_series_csv(series));
      return series.brackets_contain_target() ? kExitOk : kExitTolerance;
    }

    if (*c_cex) {
      TGrid grid = parse_grid(f.grid_json, f.logt, f.points);
      std::vector<double> u2;
      {
        std::stringstream ss(f.u2);
        std::string item;
        while (std::getline(ss, item, ',')) u2.push_back(std::stod(item));
      }
      const auto rep = bergman::asymptotics::counterexample(grid, u2);
      if (!f.out.empty()) {
        emit(f.out, bergman::report::counterexample_csv(rep));
      }
      std::printf("log t = %s: d* = %s, d1 = %s, d1/d* = %s\n",
                  bergman::report::format_number(rep.log_t.front()).c_str(),
                  bergman::report::format_number(rep.dstar.front()).c_str(),
                  bergman::report::format_number(rep.d1.front()).c_str(),
                  bergman::report::format_number(rep.ratio.front()).c_str());
      for (std::size_t j = 0; j < u2.size(); ++j) {
        std::printf("  quotient(|u2| = %s) = %s\n",
                    bergman::report::format_number(u2[j]).c_str(),
                    rep.quotient.front()[j].to_string().c_str());
      }
      return rep.max_ratio_deviation() < 1e-12 ? kExitOk : kExitTolerance;
    }

    if (*c_verify) {
      bergman::verify::VerifyOptions vo;
      vo.truncation = f.truncation;
      vo.sandwich_samples = f.samples;
      vo.seed = f.seed;
      vo.jobs = f.jobs;
      vo.out_dir = f.out;
      const auto results = bergman::verify::run_acceptance(vo);
      std::fputs(bergman::verify::format_results(results).c_str(), stdout);
      for (const auto& r : results) {
        if (!r.pass) return kExitTolerance;
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "computation error: %s\n", e.what());
    return kExitCompute;
  }
  return kExitOk;
}
