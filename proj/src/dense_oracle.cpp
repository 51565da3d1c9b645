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

#include "qtmhalt/dense_oracle.hpp"

#include <map>

namespace qtmhalt {

WindowSpace::WindowSpace(const Qtm &m, Window w, std::size_t cap)
    : window_(w), num_states_(m.num_states()), num_symbols_(m.num_symbols()) {
    if (w.lo > w.hi) {
        throw std::invalid_argument("window lo exceeds hi");
    }
    const std::size_t n = w.cells();
    place_.assign(n, 1);
    tapes_ = 1;
    for (std::size_t k = n; k-- > 0;) {
        place_[k] = tapes_;
        if (tapes_ > cap / num_symbols_) {
            throw DimensionCapError("window dimension exceeds cap of " + std::to_string(cap));
        }
        tapes_ *= num_symbols_;
    }
    const double dim = static_cast<double>(num_states_) * static_cast<double>(n) * static_cast<double>(tapes_);
    if (dim > static_cast<double>(cap)) {
        throw DimensionCapError("window dimension " + std::to_string(static_cast<std::uint64_t>(dim)) +
                                " exceeds cap of " + std::to_string(cap));
    }
    dimension_ = num_states_ * n * tapes_;
}

bool WindowSpace::contains(const Configuration &c) const {
    if (c.state >= num_states_ || c.head < window_.lo || c.head > window_.hi) {
        return false;
    }
    for (const auto &[cell, sym] : c.tape) {
        if (cell < window_.lo || cell > window_.hi) {
            return false;
        }
    }
    return true;
}

std::size_t WindowSpace::index(const Configuration &c) const {
    if (!contains(c)) {
        throw std::out_of_range("configuration outside window");
    }
    std::size_t tape = 0;
    for (const auto &[cell, sym] : c.tape) {
        tape += sym * place_[static_cast<std::size_t>(cell - window_.lo)];
    }
    const std::size_t head = static_cast<std::size_t>(c.head - window_.lo);
    return (c.state * window_.cells() + head) * tapes_ + tape;
}

Configuration WindowSpace::config(std::size_t index) const {
    Configuration c;
    std::size_t tape = index % tapes_;
    std::size_t rest = index / tapes_;
    c.head = window_.lo + static_cast<std::int64_t>(rest % window_.cells());
    c.state = static_cast<StateId>(rest / window_.cells());
    for (std::size_t k = 0; k < place_.size(); ++k) {
        SymbolId s = static_cast<SymbolId>(tape / place_[k]);
        tape %= place_[k];
        if (s != kBlank) {
            c.tape.emplace_back(window_.lo + static_cast<std::int64_t>(k), s);
        }
    }
    return c;
}

DenseMatrix build_dense_matrix(const Qtm &m, Window w, std::size_t cap) {
    DenseMatrix u{WindowSpace(m, w, cap), {}, {}};
    const WindowSpace &sp = u.space;
    const std::size_t n = w.cells();
    const std::size_t tapes = sp.tape_count();
    u.columns.resize(sp.dimension());
    u.interior.assign(sp.dimension(), true);
    for (std::size_t j = 0; j < sp.dimension(); ++j) {
        const std::size_t tape = j % tapes;
        const std::size_t head = (j / tapes) % n;
        const StateId q = static_cast<StateId>(j / tapes / n);
        // Tape digit weight of the scanned cell.
        std::size_t weight = 1;
        for (std::size_t k = head + 1; k < n; ++k) {
            weight *= m.num_symbols();
        }
        const SymbolId scanned = static_cast<SymbolId>(tape / weight % m.num_symbols());
        if (!m.delta.defined(q, scanned)) {
            continue;
        }
        for (const Transition &t : m.row(q, scanned)) {
            const std::int64_t next_head = static_cast<std::int64_t>(head) + static_cast<int>(t.dir);
            if (next_head < 0 || next_head >= static_cast<std::int64_t>(n)) {
                u.interior[j] = false;
                continue;
            }
            const std::size_t next_tape = tape - scanned * weight + t.symbol * weight;
            const std::size_t row = (t.state * n + static_cast<std::size_t>(next_head)) * tapes + next_tape;
            u.columns[j].emplace_back(row, t.amplitude);
        }
    }
    return u;
}

MatrixReport check_isometry(const Qtm &m, const DenseMatrix &u) {
    MatrixReport rep;
    rep.dimension = u.space.dimension();
    std::vector<std::vector<std::pair<std::size_t, const Amplitude *>>> by_row(rep.dimension);
    for (std::size_t j = 0; j < rep.dimension; ++j) {
        if (!u.interior[j]) {
            ++rep.boundary_columns;
            continue;
        }
        ++rep.interior_columns;
        RealValue norm;
        for (const auto &[row, a] : u.columns[j]) {
            norm += norm_sq(a);
            by_row[row].emplace_back(j, &a);
        }
        if (norm != RealValue(1) && !rep.failing_pair) {
            rep.failing_pair = {j, j};
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, Amplitude> inner;
    for (const auto &entries : by_row) {
        for (std::size_t x = 0; x < entries.size(); ++x) {
            for (std::size_t y = x + 1; y < entries.size(); ++y) {
                inner[{entries[x].first, entries[y].first}] += entries[x].second->conj() * *entries[y].second;
            }
        }
    }
    for (const auto &[pair, value] : inner) {
        if (!value.is_zero()) {
            if (!rep.failing_pair || pair < *rep.failing_pair) {
                rep.failing_pair = pair;
            }
            break;
        }
    }
    if (rep.failing_pair) {
        rep.isometry = false;
        const auto [c1, c2] = *rep.failing_pair;
        const std::string s1 = serialize_config(m, u.space.config(c1));
        rep.message = c1 == c2 ? "column " + s1 + " does not have unit norm"
                               : "columns " + s1 + " and " + serialize_config(m, u.space.config(c2)) +
                                     " are not orthogonal";
    }
    return rep;
}

MatrixReport dense_matrix(const Qtm &m, Window w, std::size_t cap) {
    return check_isometry(m, build_dense_matrix(m, w, cap));
}

DenseState dense_step(const DenseMatrix &u, const DenseState &v, std::uint64_t step_number) {
    DenseState out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) {
            continue;
        }
        if (!u.interior[j]) {
            throw BoundaryEscapeError(step_number,
                                      "amplitude leaves the window at step " + std::to_string(step_number));
        }
        for (const auto &[row, a] : u.columns[j]) {
            out[row] += a * v[j];
        }
    }
    return out;
}

DenseState dense_evolve(const DenseMatrix &u, const Configuration &start, std::uint64_t t) {
    if (!u.space.contains(start)) {
        throw std::invalid_argument("initial configuration is outside the window");
    }
    DenseState v(u.space.dimension());
    v[u.space.index(start)] = Amplitude(1);
    for (std::uint64_t i = 1; i <= t; ++i) {
        v = dense_step(u, v, i);
    }
    return v;
}

DenseState dense_evolve(const Qtm &m, std::string_view input, std::uint64_t t, Window w, std::size_t cap) {
    return dense_evolve(build_dense_matrix(m, w, cap), initial_config(m, input), t);
}

Superposition to_superposition(const WindowSpace &space, const DenseState &v) {
    Superposition out;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!v[j].is_zero()) {
            out.add(space.config(j), v[j]);
        }
    }
    return out;
}

std::vector<std::complex<double>> dense_evolve_float(const Qtm &m, std::string_view input, std::uint64_t t,
                                                     Window w, std::size_t cap) {
    const DenseMatrix u = build_dense_matrix(m, w, cap);
    const Configuration start = initial_config(m, input);
    if (!u.space.contains(start)) {
        throw std::invalid_argument("initial configuration is outside the window");
    }
    std::vector<std::vector<std::pair<std::size_t, std::complex<double>>>> cols(u.columns.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (const auto &[row, a] : u.columns[j]) {
            auto [re, im] = amp_to_float(a);
            cols[j].emplace_back(row, std::complex<double>(re, im));
        }
    }
    std::vector<std::complex<double>> v(u.space.dimension());
    v[u.space.index(start)] = 1.0;
    for (std::uint64_t i = 1; i <= t; ++i) {
        std::vector<std::complex<double>> next(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0.0) {
                continue;
            }
            if (!u.interior[j]) {
                throw BoundaryEscapeError(i, "amplitude leaves the window at step " + std::to_string(i));
            }
            for (const auto &[row, a] : cols[j]) {
                next[row] += a * v[j];
            }
        }
        v = std::move(next);
    }
    return v;
}

}  // namespace qtmhalt
