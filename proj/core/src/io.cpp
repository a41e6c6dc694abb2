#include "mfsa/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mfsa/error.hpp"
#include "mfsa/rng.hpp"

namespace mfsa::io {
namespace {

using nlohmann::json;

std::string trimmed(std::string s) {
  const auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trimmed(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  require(ec == std::errc() && ptr == end, Errc::MalformedInput,
          "bad number '" + s + "' in " + where);
  return v;
}

std::int32_t parse_int(const std::string& s, const std::string& where) {
  std::int32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size(), Errc::MalformedInput,
          "bad integer '" + s + "' in " + where);
  return v;
}

bool parses_as_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

json array_of(const std::vector<double>& v) { return json(v); }

json grid_spec_to_json(const MfdfaGridSpec& g) {
  return json{{"poly_order", g.poly_order},
              {"profile_order", g.profile_order},
              {"two_pass", g.two_pass},
              {"s_min", g.s_min},
              {"s_max", g.s_max},
              {"s_count", g.s_count},
              {"z_min", g.z_min},
              {"z_max", g.z_max},
              {"z_step", g.z_step},
              {"fit_lo", g.fit_lo},
              {"fit_hi", g.fit_hi}};
}

MfdfaGridSpec grid_spec_from_json(const json& j) {
  MfdfaGridSpec g;
  g.poly_order = j.at("poly_order").get<int>();
  g.profile_order = j.at("profile_order").get<int>();
  g.two_pass = j.at("two_pass").get<bool>();
  g.s_min = j.at("s_min").get<int>();
  g.s_max = j.at("s_max").get<int>();
  g.s_count = j.at("s_count").get<int>();
  g.z_min = j.at("z_min").get<double>();
  g.z_max = j.at("z_max").get<double>();
  g.z_step = j.at("z_step").get<double>();
  g.fit_lo = j.at("fit_lo").get<int>();
  g.fit_hi = j.at("fit_hi").get<int>();
  return g;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc(), Errc::IoFailure, "number formatting failed");
  return std::string(buf, ptr);
}

std::vector<PriceRecord> read_price_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open " + path.string());

  std::string line;
  bool saw_header = false;
  std::vector<PriceRecord> records;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trimmed(line);
    if (line.empty()) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(lineno);
    if (!saw_header) {
      require(line == "day,minute,price", Errc::MalformedInput,
              "expected header 'day,minute,price' in " + where);
      saw_header = true;
      continue;
    }
    const auto fields = split_csv(line);
    require(fields.size() == 3, Errc::MalformedInput,
            "expected 3 fields in " + where);
    records.push_back({parse_int(fields[0], where), parse_int(fields[1], where),
                       parse_double(fields[2], where)});
  }
  require(saw_header, Errc::MalformedInput, "empty file " + path.string());
  require(!records.empty(), Errc::EmptyInput, "no rows in " + path.string());
  return records;
}

RealSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open " + path.string());

  RealSeries series;
  series.label = path.stem().string();

  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  bool two_column = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trimmed(line);
    if (line.empty()) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(lineno);

    if (first) {
      first = false;
      if (line == "index,value") {
        two_column = true;
        continue;
      }
      require(line != "day,minute,price", Errc::MalformedInput,
              path.string() + " holds prices; run the preprocess step first");
      two_column = line.find(',') != std::string::npos;
    }

    if (two_column) {
      const auto fields = split_csv(line);
      require(fields.size() == 2, Errc::MalformedInput,
              "expected 2 fields in " + where);
      series.values.push_back(parse_double(fields[1], where));
    } else {
      require(parses_as_double(line), Errc::MalformedInput,
              "bad number '" + line + "' in " + where);
      series.values.push_back(parse_double(line, where));
    }
  }
  require(!series.values.empty(), Errc::EmptyInput, "no values in " + path.string());
  return series;
}

PointSet2D read_xy_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open " + path.string());

  PointSet2D points;
  points.lag = 0;  // free-standing points, not a lag portrait
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trimmed(line);
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == "x,y") continue;
    }
    const std::string where = path.filename().string() + ":" + std::to_string(lineno);
    const auto fields = split_csv(line);
    require(fields.size() == 2, Errc::MalformedInput, "expected 2 fields in " + where);
    points.x.push_back(parse_double(fields[0], where));
    points.y.push_back(parse_double(fields[1], where));
  }
  require(!points.x.empty(), Errc::EmptyInput, "no points in " + path.string());
  return points;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::IoFailure, "cannot write " + path.string());
  out << text;
  require(out.good(), Errc::IoFailure, "write failed for " + path.string());
}

std::string series_to_csv(const RealSeries& series) {
  std::string out = "index,value\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(series.values[i]);
    out += '\n';
  }
  return out;
}

std::string series_to_column(const RealSeries& series) {
  std::string out;
  for (double v : series.values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

std::string scaling_to_json(const ScalingResult& r) {
  return dump(json{{"z", array_of(r.z)},
                   {"h", array_of(r.h)},
                   {"tau", array_of(r.tau)},
                   {"stderr", array_of(r.stderr_h)},
                   {"r2", array_of(r.r2)}});
}

std::string scaling_to_csv(const ScalingResult& r) {
  std::string out = "z,h,tau,stderr,r2\n";
  for (std::size_t i = 0; i < r.z.size(); ++i) {
    out += format_double(r.z[i]) + ',' + format_double(r.h[i]) + ',' +
           format_double(r.tau[i]) + ',' + format_double(r.stderr_h[i]) + ',' +
           format_double(r.r2[i]) + '\n';
  }
  return out;
}

std::string spectrum_to_json(const MultifractalSpectrum& s) {
  return dump(json{{"alpha", array_of(s.alpha)},
                   {"f", array_of(s.f)},
                   {"delta_h", s.delta_h},
                   {"delta_alpha", s.delta_alpha},
                   {"hurst", s.hurst},
                   {"support_dim", s.support_dim},
                   {"alpha_monotonic", s.alpha_monotonic}});
}

std::string spectrum_to_csv(const MultifractalSpectrum& s) {
  std::string out = "alpha,f\n";
  for (std::size_t i = 0; i < s.alpha.size(); ++i)
    out += format_double(s.alpha[i]) + ',' + format_double(s.f[i]) + '\n';
  return out;
}

std::string fluctuation_to_csv(const FluctuationTable& t) {
  std::string out = "s,n_segments";
  for (double z : t.z) out += ",F(z=" + format_double(z) + ")";
  out += '\n';
  for (std::size_t si = 0; si < t.s.size(); ++si) {
    out += std::to_string(t.s[si]) + ',' + std::to_string(t.n_segments[si]);
    for (std::size_t zi = 0; zi < t.z.size(); ++zi)
      out += ',' + format_double(t.at(si, zi));
    out += '\n';
  }
  return out;
}

std::string decomposition_to_json(const Decomposition& d) {
  return dump(json{{"z", array_of(d.z)},
                   {"h_cor", array_of(d.h_cor)},
                   {"h_pdf", array_of(d.h_pdf)},
                   {"weight_pdf", d.weight_pdf},
                   {"weight_cor", d.weight_cor},
                   {"reference_flatness", d.reference_flatness}});
}

std::string decomposition_to_csv(const Decomposition& d) {
  std::string out = "z,h_cor,h_pdf\n";
  for (std::size_t i = 0; i < d.z.size(); ++i)
    out += format_double(d.z[i]) + ',' + format_double(d.h_cor[i]) + ',' +
           format_double(d.h_pdf[i]) + '\n';
  return out;
}

std::string profile_to_csv(const IntradayProfile& p) {
  std::string out = "minute,mean_abs_return\n";
  for (std::size_t i = 0; i < p.minute.size(); ++i)
    out += std::to_string(p.minute[i]) + ',' +
           format_double(p.mean_abs_return[i]) + '\n';
  return out;
}

std::string boxcount_to_csv(const BoxCountCurve& c) {
  std::string out = "m,n_boxes\n";
  for (std::size_t i = 0; i < c.m.size(); ++i)
    out += std::to_string(c.m[i]) + ',' + std::to_string(c.n_boxes[i]) + '\n';
  return out;
}

std::string boxdim_to_json(const BoxCountCurve& c) {
  return dump(json{{"d_f", c.d_f},
                   {"stderr", c.stderr_d},
                   {"r2", c.r2},
                   {"fit_lo", c.fit_range.first},
                   {"fit_hi", c.fit_range.second},
                   {"n_points", c.n_points},
                   {"saturated", c.saturated}});
}

std::string pdf_to_csv(const EmpiricalPdf& pdf) {
  std::string out = "center,density,edge_lo,edge_hi\n";
  for (std::size_t i = 0; i < pdf.centers.size(); ++i)
    out += format_double(pdf.centers[i]) + ',' + format_double(pdf.density[i]) +
           ',' + format_double(pdf.edges[i]) + ',' +
           format_double(pdf.edges[i + 1]) + '\n';
  return out;
}

std::string fit_curve_to_csv(const EmpiricalPdf& pdf, const FitReport& fit) {
  std::string out = "center,empirical,fitted\n";
  for (std::size_t i = 0; i < pdf.centers.size(); ++i)
    out += format_double(pdf.centers[i]) + ',' + format_double(pdf.density[i]) +
           ',' + format_double(fit.evaluate(pdf.centers[i])) + '\n';
  return out;
}

std::string fit_report_to_json(const FitReport& fit) {
  json params = json::object();
  json order = json::array();
  for (const FitParam& p : fit.params) {
    params[p.name] = json{{"value", p.value}, {"stderr", p.std_error}};
    order.push_back(p.name);
  }
  return dump(json{{"family", pdf_family_name(fit.family)},
                   {"params", params},
                   {"param_order", order},
                   {"chi2_per_n", fit.chi2_per_n},
                   {"r2", fit.r2}});
}

std::string surrogate_to_json(const RealSeries& series, const SurrogateSpec& spec) {
  return dump(json{{"surrogate",
                    json{{"kind", surrogate_kind_name(spec.kind)},
                         {"seed", spec.seed},
                         {"rng", Rng::kAlgorithm}}},
                   {"label", series.label},
                   {"values", array_of(series.values)}});
}

std::string manifest_to_json(const RunManifest& m) {
  return dump(json{{"command", m.command},
                   {"tool_version", m.tool_version},
                   {"rng", m.rng_algorithm},
                   {"base_seed", m.base_seed},
                   {"inputs", m.inputs},
                   {"mfdfa", grid_spec_to_json(m.mfdfa)},
                   {"ldiagram", json{{"lags", m.ldiagram.lags},
                                     {"bits_per_axis", m.ldiagram.bits_per_axis},
                                     {"fit_lo", m.ldiagram.fit_lo},
                                     {"fit_hi", m.ldiagram.fit_hi}}},
                   {"timestamp", m.timestamp}});
}

RunManifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::MalformedInput, std::string("manifest: ") + e.what());
  }
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.rng_algorithm = j.at("rng").get<std::string>();
    m.base_seed = j.at("base_seed").get<std::uint64_t>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.mfdfa = grid_spec_from_json(j.at("mfdfa"));
    const json& ld = j.at("ldiagram");
    m.ldiagram.lags = ld.at("lags").get<std::vector<int>>();
    m.ldiagram.bits_per_axis = ld.at("bits_per_axis").get<int>();
    m.ldiagram.fit_lo = ld.at("fit_lo").get<int>();
    m.ldiagram.fit_hi = ld.at("fit_hi").get<int>();
    m.timestamp = j.value("timestamp", "");
    return m;
  } catch (const json::exception& e) {
    fail(Errc::MalformedInput, std::string("manifest: ") + e.what());
  }
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return manifest_from_json(buffer.str());
}

std::string safe_name(const std::string& label, std::size_t index) {
  std::string cleaned;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '_';
    cleaned += ok ? c : '_';
  }
  if (cleaned.empty()) cleaned = "input";
  char prefix[8];
  std::snprintf(prefix, sizeof(prefix), "%03zu", index);
  return std::string(prefix) + "_" + cleaned;
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_suite_outputs(const std::filesystem::path& dir,
                         const RunManifest& manifest,
                         const SuiteOutcome& outcome) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "inputs");
  fs::create_directories(dir / "aggregate");

  write_text(dir / "manifest.json", manifest_to_json(manifest));

  const auto quadrant_header = [] {
    return std::string(
        "label,lag,p1,p2,p3,p4,n_pos_minus_neg,sum_returns,n_axis\n");
  };
  const auto quadrant_row = [](const std::string& label, int lag,
                               const QuadrantStats& q) {
    return label + ',' + std::to_string(lag) + ',' + format_double(q.p1) + ',' +
           format_double(q.p2) + ',' + format_double(q.p3) + ',' +
           format_double(q.p4) + ',' + std::to_string(q.n_pos_minus_neg) + ',' +
           format_double(q.sum_returns) + ',' + std::to_string(q.n_axis) + '\n';
  };

  std::string dim_header = "label";
  for (int lag : manifest.ldiagram.lags)
    dim_header += ",df_lag" + std::to_string(lag);
  dim_header += ",df_shuffled,df_phase_randomized\n";

  for (const MfdfaInputResult& entry : outcome.mfdfa.per_input) {
    const fs::path d = dir / "inputs" / safe_name(entry.label, entry.input_index);
    fs::create_directories(d);
    for (Variant v : kAllVariants) {
      const VariantAnalysis& va = entry.variants[static_cast<int>(v)];
      const std::string stem = variant_name(v);
      write_text(d / ("scaling_" + stem + ".json"), scaling_to_json(va.scaling));
      write_text(d / ("scaling_" + stem + ".csv"), scaling_to_csv(va.scaling));
      write_text(d / ("spectrum_" + stem + ".json"), spectrum_to_json(va.spectrum));
      write_text(d / ("spectrum_" + stem + ".csv"), spectrum_to_csv(va.spectrum));
    }
    write_text(d / "decomposition.json", decomposition_to_json(entry.decomposition));
    write_text(d / "decomposition.csv", decomposition_to_csv(entry.decomposition));
  }

  for (const LdiagramInputResult& entry : outcome.ldiagram.per_input) {
    const fs::path d = dir / "inputs" / safe_name(entry.label, entry.input_index);
    fs::create_directories(d);
    std::string quadrants = quadrant_header();
    for (std::size_t li = 0; li < entry.quadrants.size(); ++li)
      quadrants += quadrant_row(entry.label, manifest.ldiagram.lags[li],
                                entry.quadrants[li]);
    write_text(d / "quadrants.csv", quadrants);

    for (std::size_t li = 0; li < entry.curves.size(); ++li)
      write_text(d / ("boxcount_lag" +
                      std::to_string(manifest.ldiagram.lags[li]) + ".csv"),
                 boxcount_to_csv(entry.curves[li]));
    write_text(d / "boxcount_shuffled.csv", boxcount_to_csv(entry.shuffled_curve));
    write_text(d / "boxcount_phase_randomized.csv",
               boxcount_to_csv(entry.randomized_curve));

    std::string dims = dim_header + entry.label;
    for (const BoxCountCurve& c : entry.curves) dims += ',' + format_double(c.d_f);
    dims += ',' + format_double(entry.shuffled_curve.d_f);
    dims += ',' + format_double(entry.randomized_curve.d_f);
    dims += '\n';
    write_text(d / "dimensions.csv", dims);
  }

  // aggregate tables
  if (outcome.mfdfa.has_average) {
    for (Variant v : kAllVariants) {
      const VariantAnalysis& va = outcome.mfdfa.average[static_cast<int>(v)];
      const std::string stem = variant_name(v);
      write_text(dir / "aggregate" / ("scaling_" + stem + ".json"),
                 scaling_to_json(va.scaling));
      write_text(dir / "aggregate" / ("scaling_" + stem + ".csv"),
                 scaling_to_csv(va.scaling));
      write_text(dir / "aggregate" / ("spectrum_" + stem + ".json"),
                 spectrum_to_json(va.spectrum));
      write_text(dir / "aggregate" / ("spectrum_" + stem + ".csv"),
                 spectrum_to_csv(va.spectrum));
    }
    write_text(dir / "aggregate" / "decomposition.json",
               decomposition_to_json(outcome.mfdfa.average_decomposition));
    write_text(dir / "aggregate" / "decomposition.csv",
               decomposition_to_csv(outcome.mfdfa.average_decomposition));
  }

  std::string quadrants = quadrant_header();
  std::string dims = dim_header;
  for (const LdiagramInputResult& entry : outcome.ldiagram.per_input) {
    for (std::size_t li = 0; li < entry.quadrants.size(); ++li)
      quadrants += quadrant_row(entry.label, manifest.ldiagram.lags[li],
                                entry.quadrants[li]);
    dims += entry.label;
    for (const BoxCountCurve& c : entry.curves) dims += ',' + format_double(c.d_f);
    dims += ',' + format_double(entry.shuffled_curve.d_f);
    dims += ',' + format_double(entry.randomized_curve.d_f);
    dims += '\n';
  }
  write_text(dir / "aggregate" / "quadrants.csv", quadrants);
  write_text(dir / "aggregate" / "dimensions.csv", dims);

  std::string failures = "stage,label,message\n";
  for (const SuiteFailure& f : outcome.load_failures)
    failures += "load," + f.label + ",\"" + f.message + "\"\n";
  for (const SuiteFailure& f : outcome.mfdfa.failures)
    failures += "mfdfa," + f.label + ",\"" + f.message + "\"\n";
  for (const SuiteFailure& f : outcome.ldiagram.failures)
    failures += "ldiagram," + f.label + ",\"" + f.message + "\"\n";
  write_text(dir / "aggregate" / "failures.csv", failures);
}

}  // namespace mfsa::io
