#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfsa/density.hpp"
#include "mfsa/ldiagram.hpp"
#include "mfsa/mfdfa.hpp"
#include "mfsa/preprocess.hpp"
#include "mfsa/series.hpp"
#include "mfsa/suite.hpp"
#include "mfsa/surrogate.hpp"

namespace mfsa::io {

// Shortest decimal string that parses back to exactly the same double.
// Every number in every text output goes through this, so files carry full
// precision and identical runs produce identical bytes.
std::string format_double(double v);

// day,minute,price with that exact header.
std::vector<PriceRecord> read_price_csv(const std::filesystem::path& path);

// One value per line, or an index,value CSV (the writer's own output);
// detected from the first line.
RealSeries read_series(const std::filesystem::path& path);

// Two-column x,y CSV (optional "x,y" header) into a point set with lag 0.
PointSet2D read_xy_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

// index,value rows under that header.
std::string series_to_csv(const RealSeries& series);
// one value per line; the format every analysis command reads back
std::string series_to_column(const RealSeries& series);

std::string scaling_to_json(const ScalingResult& r);
std::string scaling_to_csv(const ScalingResult& r);
std::string spectrum_to_json(const MultifractalSpectrum& s);
std::string spectrum_to_csv(const MultifractalSpectrum& s);
std::string fluctuation_to_csv(const FluctuationTable& t);
std::string decomposition_to_json(const Decomposition& d);
std::string decomposition_to_csv(const Decomposition& d);
std::string profile_to_csv(const IntradayProfile& p);
std::string boxcount_to_csv(const BoxCountCurve& c);
std::string boxdim_to_json(const BoxCountCurve& c);
std::string pdf_to_csv(const EmpiricalPdf& pdf);
// center, empirical density, fitted density
std::string fit_curve_to_csv(const EmpiricalPdf& pdf, const FitReport& fit);
std::string fit_report_to_json(const FitReport& fit);

// Series plus generation metadata (surrogate kind, seed, generator id).
std::string surrogate_to_json(const RealSeries& series, const SurrogateSpec& spec);

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);
RunManifest read_manifest(const std::filesystem::path& path);

// Filesystem-safe "<index>_<label>" name; an empty label becomes "input".
std::string safe_name(const std::string& label, std::size_t index);

// UTC wall-clock time, e.g. "2026-08-17T09:15:02Z"; manifest timestamps.
std::string now_iso8601();

// Lays out manifest.json, one directory per input and the aggregate tables
// under `dir`. Everything except the manifest's timestamp is a pure
// function of (manifest, inputs).
void write_suite_outputs(const std::filesystem::path& dir,
                         const RunManifest& manifest,
                         const SuiteOutcome& outcome);

}  // namespace mfsa::io
