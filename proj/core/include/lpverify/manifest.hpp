#pragma once

#include <string>
#include <string_view>

#include "lpverify/frame.hpp"
#include "lpverify/structure.hpp"
#include "lpverify/submanifold.hpp"

namespace lpv {

/// Everything a manifest declares. `structure` and `submanifold` are null
/// when the corresponding section is absent.
struct Manifest {
  ManifoldPtr spec;
  StructurePtr structure;
  SubmanifoldPtr submanifold;
};

/// Parses a manifest document.
///
///   # comment
///   [manifold]
///   dimension = 3
///   coordinates = x, y, z
///   signature = lorentzian        # optional: lorentzian | riemannian
///
///   [frame]                       # row i: coordinate components of nu_i
///   0, e^z, 0
///   e^z, e^z, 0
///   0, 0, 1
///
///   [metric]                      # g(nu_i, nu_j), constant
///   1, 0, 0
///   0, 1, 0
///   0, 0, -1
///
///   [domain]                      # optional, default [-1, 1]
///   z = -2, 2
///
///   [structure]                   # optional
///   phi = -1, 0, 0                # n rows; row k holds component k of
///   phi = 0, -1, 0                # phi(nu_1) ... phi(nu_n)
///   phi = 0, 0, 0
///   xi = 0, 0, 1
///   eta_closed = true
///
///   [submanifold]                 # optional, needs [structure]
///   coordinates = y, z
///   map = 0, y, z                 # ambient coordinates in terms of y, z
///   tangent_frame = 1, 0, 0       # one line per field, frame coefficients
///   tangent_frame = 0, 0, 1
///   D = 1, 2                      # 1-based indices into tangent_frame
///   D_perp =
///   orientation = xi_horizontal   # optional
///   domain.y = -1, 1              # optional
///
/// Syntax errors throw ParseError with 1-based line and column; semantic
/// errors (dimension mismatch, degenerate metric, invalid CR split) throw
/// ValidationError or SubmanifoldError.
Manifest parse_manifest(std::string_view text);

/// Reads and parses a file. Throws Error when the file cannot be read.
Manifest load_manifest(const std::string& path);

}  // namespace lpv
