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

#ifndef FAIRLENS_CURVES_EXPORT_H_
#define FAIRLENS_CURVES_EXPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/curves/risk_curve.h"

namespace fairlens::curves {

enum class CurveFormat { kCsv, kSvg };

CurveFormat parse_curve_format(std::string_view name);

inline constexpr std::string_view kCurveCsvHeader =
    "percentile,feature_value,mean_risk,std,p10,p90";

// Values at 17 significant digits, so parsing restores them exactly.
std::string curve_to_csv(const RiskCurve& curve);
std::vector<CurvePoint> parse_curve_csv(std::string_view text);

// Self-contained SVG: shaded p10-p90 band, mean line (id "mean-line"), axes.
std::string curve_to_svg(const RiskCurve& curve);

void export_curve(const RiskCurve& curve, CurveFormat format,
                  const std::filesystem::path& path);

}  // namespace fairlens::curves

#endif  // FAIRLENS_CURVES_EXPORT_H_
