#pragma once

// CSV and SVG renderings of a sampled unit ball. Numbers are printed with
// 12 significant digits so that output is byte-stable.

#include <string>

#include "homflow/norm_analysis.hpp"

namespace homflow {

std::string format_number(double x);

/// Header ux,uy,gauge,bx,by and one row per sample.
std::string ball_csv(const NormBall& ball);

/// 1000x1000 drawing: axes, the ball polygon scaled to 80% of the canvas,
/// detected vertices, and an optional inset of the unit cell of `inset`.
std::string ball_svg(const NormBall& ball, const PeriodicGraph* inset = nullptr,
                     const std::string& title = {});

}  // namespace homflow
