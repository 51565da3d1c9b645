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

#include <cmath>

#include "gtest/gtest.h"
#include "qtmhalt/branch_compiler.hpp"
#include "qtmhalt/corpus.hpp"

using namespace qtmhalt;

TEST(WindowSpace, enumeration_order) {
    const Qtm m = never_halt_tm();
    const WindowSpace sp(m, {0, 1});
    EXPECT_EQ(sp.dimension(), 2u * 2u * 9u);
    Configuration c;
    EXPECT_EQ(sp.index(c), 0u);
    c.write(1, 1);
    EXPECT_EQ(sp.index(c), 1u);
    c = Configuration();
    c.write(0, 1);
    EXPECT_EQ(sp.index(c), 3u);
    c.head = 1;
    EXPECT_EQ(sp.index(c), 12u);
    c.state = 1;
    EXPECT_EQ(sp.index(c), 30u);
    for (std::size_t j = 0; j < sp.dimension(); ++j) {
        EXPECT_EQ(sp.index(sp.config(j)), j);
    }
    c.write(2, 1);
    EXPECT_FALSE(sp.contains(c));
    EXPECT_THROW(sp.index(c), std::out_of_range);
}

TEST(WindowSpace, cap) {
    EXPECT_THROW(WindowSpace(right_mover_tm(), {0, 3}, 100), DimensionCapError);
    EXPECT_NO_THROW(WindowSpace(right_mover_tm(), {0, 3}, 324));
    EXPECT_THROW(WindowSpace(right_mover_tm(), {2, 1}), std::invalid_argument);
    const BranchQtm q = compile_branch_qtm(immediate_halt_tm(), never_halt_tm());
    EXPECT_THROW(dense_matrix(q.machine, {-2, 4}), DimensionCapError);
}

TEST(DenseMatrix, right_mover_permutation) {
    const Qtm m = right_mover_tm();
    const DenseMatrix u = build_dense_matrix(m, {0, 2});
    std::size_t interior = 0;
    for (std::size_t j = 0; j < u.columns.size(); ++j) {
        if (!u.interior[j]) {
            EXPECT_EQ(u.space.config(j).head, 2);
            continue;
        }
        ++interior;
        ASSERT_EQ(u.columns[j].size(), 1u);
        EXPECT_TRUE(u.columns[j][0].second.is_one());
    }
    EXPECT_EQ(interior, 54u);
    const MatrixReport r = dense_matrix(m, {0, 2});
    EXPECT_TRUE(r.isometry);
    EXPECT_EQ(r.interior_columns, 54u);
    EXPECT_EQ(r.boundary_columns, 27u);
}

TEST(DenseMatrix, norm_two_row_fails) {
    Qtm m = right_mover_tm();
    m.delta.set_row(0, 1, Row{{Amplitude(1), 0, 1, Direction::R}, {Amplitude(1), 0, 2, Direction::L}});
    const MatrixReport r = dense_matrix(m, {0, 2});
    EXPECT_FALSE(r.isometry);
    ASSERT_TRUE(r.failing_pair);
    EXPECT_FALSE(check_wellformed(m).ok);
}

TEST(DenseMatrix, compiled_machine_is_isometric) {
    for (const auto &[a, b] : std::vector<std::pair<Qtm, Qtm>>{{immediate_halt_tm(), never_halt_tm()},
                                                               {immediate_halt_tm(), bounce_tm(1)}}) {
        const BranchQtm q = compile_branch_qtm(a, b);
        const MatrixReport r = dense_matrix(q.machine, {-2, 1});
        EXPECT_TRUE(r.isometry) << r.message;
        EXPECT_TRUE(check_wellformed(q.machine).ok);
    }
}

TEST(DenseEvolve, examples) {
    const Qtm m = right_mover_tm();
    const DenseState zero = dense_evolve(m, "", 0, {0, 3});
    std::size_t nonzero = 0;
    for (const Amplitude &a : zero) {
        nonzero += !a.is_zero();
    }
    EXPECT_EQ(nonzero, 1u);
    EXPECT_TRUE(zero[0].is_one());

    const WindowSpace sp(m, {0, 3});
    const Superposition three = to_superposition(sp, dense_evolve(m, "", 3, {0, 3}));
    ASSERT_EQ(three.size(), 1u);
    EXPECT_EQ(three.entries().begin()->first.head, 3);
    try {
        dense_evolve(m, "", 4, {0, 3});
        FAIL();
    } catch (const BoundaryEscapeError &e) {
        EXPECT_EQ(e.step, 4u);
    }
    EXPECT_THROW(dense_evolve(m, "0101", 0, {0, 2}), std::invalid_argument);
}

TEST(DenseEvolve, compiled_instance_matches_sparse) {
    const BranchQtm q = compile_branch_qtm(immediate_halt_tm(), bounce_tm(1));
    const DenseMatrix u = build_dense_matrix(q.machine, {-2, 1});
    const Configuration start = initial_config(q.machine, "");
    for (std::uint64_t t = 0; t <= 5; ++t) {
        EXPECT_EQ(to_superposition(u.space, dense_evolve(u, start, t)), evolve(q.machine, "", t)) << t;
    }
    EXPECT_THROW(dense_evolve(u, start, 9), BoundaryEscapeError);
}

TEST(DenseEvolve, sparse_agreement_on_corpus) {
    std::vector<std::pair<Qtm, std::string>> cases = {
        {right_mover_tm(), "1"}, {split_same_qtm(), ""}, {myers_interference_qtm(), ""}};
    for (const ReversibleCase &c : reversible_corpus()) {
        if (c.input.size() <= 4) {
            cases.push_back({c.machine, c.input});
        }
    }
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        cases.push_back({random_wellformed_qtm(seed, {2, 3, 2, true, 1}), "0"});
    }
    std::size_t compared = 0;
    for (const auto &[m, input] : cases) {
        for (const Window w : {Window{0, 4}, Window{-2, 4}, Window{-3, 3}}) {
            if (static_cast<double>(m.num_states()) * w.cells() * std::pow(3.0, w.cells()) > kDefaultDimensionCap) {
                continue;
            }
            const DenseMatrix u = build_dense_matrix(m, w);
            DenseState v(u.space.dimension());
            v[u.space.index(initial_config(m, input))] = Amplitude(1);
            Superposition psi(initial_config(m, input));
            for (std::uint64_t t = 1; t <= 20; ++t) {
                try {
                    v = dense_step(u, v, t);
                } catch (const BoundaryEscapeError &) {
                    break;
                }
                psi = step(m, psi);
                EXPECT_EQ(to_superposition(u.space, v), psi) << m.name << " t=" << t;
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 200u);
}

TEST(DenseMatrix, agrees_with_check_wellformed) {
    std::vector<Qtm> machines = ill_formed_corpus();
    for (const ReversibleCase &c : reversible_corpus()) {
        machines.push_back(c.machine);
    }
    machines.push_back(right_mover_tm());
    machines.push_back(split_same_qtm());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Qtm m = random_wellformed_qtm(seed, {2, 3, 1, true, 1});
        machines.push_back(m);
    }
    for (const Qtm &m : machines) {
        const bool wf = check_wellformed(m).ok;
        for (std::size_t cells = 3; cells <= 5; ++cells) {
            const MatrixReport r = dense_matrix(m, {0, static_cast<std::int64_t>(cells) - 1});
            EXPECT_EQ(r.isometry, wf) << m.name << " cells=" << cells << " " << r.message;
        }
    }
}

TEST(DenseMatrix, mixed_direction_defects_need_five_cells) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Qtm m = mutate_ill_formed(random_wellformed_qtm(seed, {2, 3, 1, true, 1}), seed);
        ASSERT_FALSE(check_wellformed(m).ok);
        EXPECT_FALSE(dense_matrix(m, {0, 4}).isometry) << m.name;
    }
}

TEST(DenseEvolve, float_mode_tracks_exact) {
    const Qtm m = myers_interference_qtm();
    const DenseMatrix u = build_dense_matrix(m, {0, 5});
    const DenseState exact = dense_evolve(u, initial_config(m, ""), 4);
    const std::vector<std::complex<double>> approx = dense_evolve_float(m, "", 4, {0, 5});
    ASSERT_EQ(exact.size(), approx.size());
    for (std::size_t j = 0; j < exact.size(); ++j) {
        const auto [re, im] = amp_to_float(exact[j]);
        EXPECT_NEAR(approx[j].real(), re, 1e-12);
        EXPECT_NEAR(approx[j].imag(), im, 1e-12);
    }
}
