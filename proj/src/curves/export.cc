/*
 * Copyright 2026 The Fairlens Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairlens/curves/export.h"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "fairlens/core/csv.h"
#include "fairlens/core/error.h"
#include "fairlens/core/io.h"

namespace fairlens::curves {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fixed3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

double parse_field(const std::string& s, size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("curve CSV line " + std::to_string(line) + ": bad number '" +
                s + "'");
  }
  return v;
}

}  // namespace

CurveFormat parse_curve_format(std::string_view name) {
  if (name == "csv") return CurveFormat::kCsv;
  if (name == "svg") return CurveFormat::kSvg;
  throw Error("unknown curve format '" + std::string(name) + "'");
}

std::string curve_to_csv(const RiskCurve& curve) {
  std::string out(kCurveCsvHeader);
  out += '\n';
  for (const auto& p : curve.points) {
    out += std::to_string(p.percentile) + ',' + format_double(p.feature_value, 17) +
           ',' + format_double(p.mean_risk, 17) + ',' +
           format_double(p.std_dev, 17) + ',' + format_double(p.p10, 17) + ',' +
           format_double(p.p90, 17) + '\n';
  }
  return out;
}

std::vector<CurvePoint> parse_curve_csv(std::string_view text) {
  const auto records = parse_csv_records(text);
  if (records.empty()) throw Error("curve CSV is empty");
  std::string header;
  for (size_t j = 0; j < records[0].size(); ++j) {
    header += (j ? "," : "") + records[0][j];
  }
  if (header != kCurveCsvHeader) throw Error("unexpected curve CSV header");
  std::vector<CurvePoint> points;
  for (size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != 6) {
      throw Error("curve CSV line " + std::to_string(r + 1) +
                  ": expected 6 fields");
    }
    CurvePoint p;
    p.percentile = static_cast<size_t>(parse_field(rec[0], r + 1));
    p.feature_value = parse_field(rec[1], r + 1);
    p.mean_risk = parse_field(rec[2], r + 1);
    p.std_dev = parse_field(rec[3], r + 1);
    p.p10 = parse_field(rec[4], r + 1);
    p.p90 = parse_field(rec[5], r + 1);
    points.push_back(p);
  }
  return points;
}

std::string curve_to_svg(const RiskCurve& curve) {
  if (curve.points.empty()) throw Error("cannot render an empty curve");
  double x_min = curve.points.front().feature_value;
  double x_max = curve.points.back().feature_value;
  if (x_max <= x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  const auto sy = [&](double risk) { return kTop + (1.0 - risk) * plot_h; };

  std::string band = "M";
  for (size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    band += (i ? " L " : " ") + fixed3(sx(p.feature_value)) + " " + fixed3(sy(p.p90));
  }
  for (size_t i = curve.points.size(); i-- > 0;) {
    const auto& p = curve.points[i];
    band += " L " + fixed3(sx(p.feature_value)) + " " + fixed3(sy(p.p10));
  }
  band += " Z";

  std::string mean = "M";
  for (size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    mean += (i ? " L " : " ") + fixed3(sx(p.feature_value)) + " " +
            fixed3(sy(p.mean_risk));
  }

  const std::string x0 = fixed3(kLeft);
  const std::string x1 = fixed3(kLeft + plot_w);
  const std::string y0 = fixed3(kTop + plot_h);
  const std::string y1 = fixed3(kTop);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<title>Feature risk curve: " + xml_escape(curve.feature) + "</title>\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<path id=\"risk-band\" d=\"" + band +
         "\" fill=\"#4c72b0\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
  svg += "<path id=\"mean-line\" d=\"" + mean +
         "\" fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"2\"/>\n";
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 +
         "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double risk = t / 4.0;
    const std::string y = fixed3(sy(risk));
    svg += "<line x1=\"" + fixed3(kLeft - 5) + "\" y1=\"" + y + "\" x2=\"" + x0 +
           "\" y2=\"" + y + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed3(kLeft - 8) + "\" y=\"" + y +
           "\" text-anchor=\"end\" dominant-baseline=\"middle\">" +
           format_double(risk, 2) + "</text>\n";
    const double v = x_min + (x_max - x_min) * t / 4.0;
    const std::string x = fixed3(sx(v));
    svg += "<line x1=\"" + x + "\" y1=\"" + y0 + "\" x2=\"" + x + "\" y2=\"" +
           fixed3(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + x + "\" y=\"" + fixed3(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + format_double(v, 3) + "</text>\n";
  }
  svg += "<text x=\"" + fixed3(kLeft + plot_w / 2) + "\" y=\"" +
         fixed3(kHeight - 15) + "\" text-anchor=\"middle\">" +
         xml_escape(curve.feature) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fixed3(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fixed3(kTop + plot_h / 2) + ")\">" +
         (curve.balanced ? "Predicted risk (balanced set)" : "Predicted risk") +
         "</text>\n";
  svg += "<text x=\"" + fixed3(kLeft + plot_w / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">Feature risk curve: " +
         xml_escape(curve.feature) + " (n=" + std::to_string(curve.eval_set_size) +
         ", band p10-p90)</text>\n";
  svg += "</svg>\n";
  return svg;
}

void export_curve(const RiskCurve& curve, CurveFormat format,
                  const std::filesystem::path& path) {
  write_file_atomic(path, format == CurveFormat::kCsv ? curve_to_csv(curve)
                                                      : curve_to_svg(curve));
}

}  // namespace fairlens::curves
