#pragma once

#include <string>
#include <vector>

#include "fatpoints/configs.hpp"
#include "fatpoints/interpolation.hpp"
#include "fatpoints/toric.hpp"

namespace fatpoints {

enum class PlateauTag {
  ImpossibleWitness,   // computed plateau contradicts the classification; must never occur
  NegativeCurvePoint,  // plateau r+2: a single point on the negative curve
  SingleFiber,         // plateau r+1: all points in one fiber
  F1PencilStar,        // plateau r+1 on F_1: pencil-plus-star intersection points
  NoPlateauStructure,  // plateau <= r
};

inline std::string to_string(PlateauTag t) {
  switch (t) {
    case PlateauTag::ImpossibleWitness: return "ImpossibleWitness";
    case PlateauTag::NegativeCurvePoint: return "NegativeCurvePoint";
    case PlateauTag::SingleFiber: return "SingleFiber";
    case PlateauTag::F1PencilStar: return "F1PencilStar";
    case PlateauTag::NoPlateauStructure: return "NoPlateauStructure";
  }
  return "?";
}

struct Classification {
  PlateauTag tag = PlateauTag::NoPlateauStructure;
  int plateau_length = 0;
  std::vector<long> alphas;
  std::vector<Certificate> certificates;  // one per computed alpha
  std::string details;
};

/**
 * Computes the plateau length (at most r+3 sequence terms are needed) and
 * matches it against the classification: plateau r+2 forces a single
 * negative-curve point, plateau r+1 forces a single fiber or (r = 1) a
 * pencil-plus-star configuration, and plateau r+3 cannot occur. A computed
 * plateau whose geometry fails these checks is reported as
 * ImpossibleWitness — finding one would refute a theorem.
 */
inline Classification classify_plateau(const HirzebruchSurface& s,
                                       const std::vector<SurfacePoint>& z_red,
                                       const SearchOptions& opts = {}) {
  const int r = s.r;
  SequenceReport rep = plateau_sequence(s, z_red, r + 3, opts);
  Classification out;
  out.plateau_length = rep.plateau_length;
  out.alphas = rep.alphas;
  out.certificates = std::move(rep.certificates);

  const long a = rep.alphas[0];
  const bool single_fiber_set = [&] {
    for (std::size_t i = 1; i < z_red.size(); ++i)
      if (!same_fiber(z_red[0], z_red[i])) return false;
    return true;
  }();

  if (out.plateau_length >= r + 3) {
    out.tag = PlateauTag::ImpossibleWitness;
    out.details = "plateau of length r+3 computed; no such scheme should exist";
  } else if (out.plateau_length == r + 2) {
    if (z_red.size() == 1 && on_negative_curve(z_red[0]) && a == 1) {
      out.tag = PlateauTag::NegativeCurvePoint;
      out.details = "single point on the negative curve, alpha = 1";
    } else {
      out.tag = PlateauTag::ImpossibleWitness;
      out.details = "plateau r+2 but not a single negative-curve point with alpha 1";
    }
  } else if (out.plateau_length == r + 1) {
    if (single_fiber_set && a == 1) {
      out.tag = PlateauTag::SingleFiber;
      out.details = "all points in one fiber, alpha = 1";
    } else if (r == 1 && recognize_pencil_star(z_red, a)) {
      out.tag = PlateauTag::F1PencilStar;
      out.details = "intersection points of " + std::to_string(a) +
                    " pencil lines and " + std::to_string(a) + " star lines";
    } else {
      out.tag = PlateauTag::ImpossibleWitness;
      out.details = "plateau r+1 but neither a fiber set nor a recognized pencil-star set";
    }
  } else {
    out.tag = PlateauTag::NoPlateauStructure;
    out.details = "plateau length " + std::to_string(out.plateau_length) + " <= r";
  }
  return out;
}

}  // namespace fatpoints
