// Copyright 2026 The qtmhalt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference evolution on a finite window of the configuration space.
//
// A window [lo, hi] holds every configuration whose head and non-blank cells
// lie in [lo, hi]. Basis index, most significant first:
//
//   state, head - lo, then the tape read as a base-|alphabet| number with
//   cell lo as the leading digit.
//
// Column j of the step matrix is the image of basis configuration j. A column
// is interior when every image configuration is again in the window and
// boundary otherwise. Only interior columns are exact, so the isometry check
// and dense evolution use them alone.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtmhalt/amplitude.hpp"
#include "qtmhalt/dynamics.hpp"
#include "qtmhalt/machine.hpp"

namespace qtmhalt {

struct Window {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::size_t cells() const { return static_cast<std::size_t>(hi - lo + 1); }
};

inline constexpr std::size_t kDefaultDimensionCap = 200000;

struct DimensionCapError : ResourceLimitError {
    using ResourceLimitError::ResourceLimitError;
};

struct BoundaryEscapeError : std::runtime_error {
    BoundaryEscapeError(std::uint64_t step, const std::string &what) : std::runtime_error(what), step(step) {}
    /// Step whose application would move mass out of the window.
    std::uint64_t step;
};

class WindowSpace {
  public:
    /// Throws DimensionCapError when the dimension exceeds `cap`, and
    /// std::invalid_argument when lo > hi.
    WindowSpace(const Qtm &m, Window w, std::size_t cap = kDefaultDimensionCap);

    Window window() const { return window_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t tape_count() const { return tapes_; }

    bool contains(const Configuration &c) const;
    /// Throws std::out_of_range when c is outside the window.
    std::size_t index(const Configuration &c) const;
    Configuration config(std::size_t index) const;

  private:
    Window window_;
    std::size_t num_states_;
    std::size_t num_symbols_;
    std::size_t tapes_;
    std::size_t dimension_;
    /// place_[k] is the weight of the digit for cell lo + k.
    std::vector<std::size_t> place_;
};

struct DenseMatrix {
    WindowSpace space;
    /// columns[j] holds the nonzero entries (row, value) of column j.
    std::vector<std::vector<std::pair<std::size_t, Amplitude>>> columns;
    std::vector<bool> interior;
};

DenseMatrix build_dense_matrix(const Qtm &m, Window w, std::size_t cap = kDefaultDimensionCap);

struct MatrixReport {
    std::size_t dimension = 0;
    std::size_t interior_columns = 0;
    std::size_t boundary_columns = 0;
    /// Interior columns are orthonormal (exact).
    bool isometry = true;
    /// Failing column pair; equal indices mean a column of norm other than one.
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
    std::string message;
};

MatrixReport check_isometry(const Qtm &m, const DenseMatrix &u);
MatrixReport dense_matrix(const Qtm &m, Window w, std::size_t cap = kDefaultDimensionCap);

using DenseState = std::vector<Amplitude>;

/// One exact step. Throws BoundaryEscapeError (with `step_number`) when any
/// nonzero amplitude sits on a boundary column.
DenseState dense_step(const DenseMatrix &u, const DenseState &v, std::uint64_t step_number = 1);

/// t steps from the initial configuration. Throws std::invalid_argument
/// when the initial configuration is outside the window.
DenseState dense_evolve(const Qtm &m, std::string_view input, std::uint64_t t, Window w,
                        std::size_t cap = kDefaultDimensionCap);
DenseState dense_evolve(const DenseMatrix &u, const Configuration &start, std::uint64_t t);

Superposition to_superposition(const WindowSpace &space, const DenseState &v);

/// Double-precision variant for windows too large for exact use.
std::vector<std::complex<double>> dense_evolve_float(const Qtm &m, std::string_view input, std::uint64_t t,
                                                     Window w, std::size_t cap = kDefaultDimensionCap);

}  // namespace qtmhalt
