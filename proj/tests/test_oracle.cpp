#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "test_support.hpp"
#include "wefkit/oracle.hpp"
#include "wefkit/pipeline.hpp"

using namespace wefkit;

namespace {

const GeneratorSpec& bcc_gen() {
    static const auto g = GeneratorSpec::from_text("1,0,1/7;0,1,5/7");
    return g;
}

BccPermutations identity_perms(int n) {
    return {identity_permutation(n), identity_permutation(n), identity_permutation(n)};
}

std::vector<std::uint8_t> bits_of(std::uint32_t word, int n) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = (word >> j) & 1;
    return out;
}

}  // namespace

TEST_CASE("membership of the all-zero word and single-bit corruptions", "[oracle]") {
    const auto t23 = build_trellis(bcc_gen());
    const int n = 6;
    const std::vector<std::uint8_t> zero(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> in2 = zero, parity = zero;
    CHECK(trellis_membership(t23, zero, &in2, parity));
    parity[2] = 1;  // recursive systematic encoders admit no parity-only weight-1 word
    CHECK_FALSE(trellis_membership(t23, zero, &in2, parity));

    const auto t12 = build_trellis(GeneratorSpec::from_text("1,5/7"));
    CHECK(trellis_membership(t12, zero, nullptr, zero));
    CHECK_THROWS_AS(trellis_membership(t12, zero, &in2, zero), std::invalid_argument);
    CHECK_THROWS_AS(trellis_membership(t12, zero, nullptr, std::vector<std::uint8_t>(3, 0)),
                    std::invalid_argument);
}

TEST_CASE("encode-then-check round trip", "[oracle]") {
    const auto t = build_trellis(bcc_gen());
    const int n = 5;
    int members = 0;
    for (std::uint32_t w1 = 0; w1 < (1u << n); ++w1)
        for (std::uint32_t w2 = 0; w2 < (1u << n); ++w2) {
            const auto in1 = bits_of(w1, n), in2 = bits_of(w2, n);
            auto [parity, state] = run_encoder(t, {in1, in2});
            auto in2_copy = in2;
            const bool member = trellis_membership(t, in1, &in2_copy, parity);
            CHECK(member == (state == 0));
            members += member;
        }
    CHECK(members == 256);  // 4^5 inputs, uniform over 4 final states
}

TEST_CASE("uncoupled code contains zero and is closed under addition", "[oracle]") {
    testing::DetRng rng{42};
    const int n = 3;
    for (int trial = 0; trial < 4; ++trial) {
        const BccPermutations perms =
            trial == 0 ? identity_perms(n)
                       : BccPermutations{testing::random_permutation(rng, n),
                                         testing::random_permutation(rng, n),
                                         testing::random_permutation(rng, n)};
        const auto words = enumerate_uncoupled_bcc(bcc_gen(), bcc_gen(), perms, n);
        const std::set<CodewordTriple> set(words.begin(), words.end());
        CHECK(set.size() == words.size());  // enumeration has no duplicates
        CHECK(set.count(CodewordTriple{BitVec(n), BitVec(n), BitVec(n)}) == 1);
        // |set| is a power of two (a linear space)
        CHECK((words.size() & (words.size() - 1)) == 0);
        for (std::size_t a = 0; a < words.size(); a += 3)
            for (std::size_t b = a; b < words.size(); b += 5) {
                const CodewordTriple sum{words[a].u ^ words[b].u,
                                         words[a].v_upper ^ words[b].v_upper,
                                         words[a].v_lower ^ words[b].v_lower};
                CHECK(set.count(sum) == 1);
            }
    }
}

TEST_CASE("membership walk agrees with the nullspace enumeration", "[oracle]") {
    const int n = 3;
    const auto perms = identity_perms(n);
    const auto words = enumerate_uncoupled_bcc(bcc_gen(), bcc_gen(), perms, n);
    const auto t = build_trellis(bcc_gen());
    for (const auto& cw : words) {
        std::vector<std::uint8_t> u(static_cast<std::size_t>(n)), vu(u), vl(u), fed(u);
        for (int j = 0; j < n; ++j) {
            u[static_cast<std::size_t>(j)] = cw.u.get(j);
            vu[static_cast<std::size_t>(j)] = cw.v_upper.get(j);
            vl[static_cast<std::size_t>(j)] = cw.v_lower.get(j);
        }
        // identity permutations: the upper trellis sees (u, v_lower) and emits v_upper
        CHECK(trellis_membership(t, u, &vl, vu));
        CHECK(trellis_membership(t, u, &vu, vl));
    }
}

TEST_CASE("coupled chains: zero chain, L=1 reduction, termination", "[oracle]") {
    testing::DetRng rng{7};
    const int n = 3;
    const BccPermutations perms{testing::random_permutation(rng, n),
                                testing::random_permutation(rng, n),
                                testing::random_permutation(rng, n)};
    const auto t = build_trellis(bcc_gen());

    const auto chains1 = enumerate_coupled_bcc(bcc_gen(), bcc_gen(), perms, n, 1);
    bool found_zero = false;
    for (const auto& chain : chains1) {
        REQUIRE(chain.sections.size() == 1);
        const auto& s = chain.sections[0];
        found_zero = found_zero || chain.weight() == 0;
        // with zero boundary the single section satisfies both trellis constraints
        // with all-zero second inputs
        std::vector<std::uint8_t> u(static_cast<std::size_t>(n)), vu(u), vl(u),
            zero(static_cast<std::size_t>(n), 0), u_perm(u);
        for (int j = 0; j < n; ++j) {
            u[static_cast<std::size_t>(j)] = s.u.get(j);
            vu[static_cast<std::size_t>(j)] = s.v_upper.get(j);
            vl[static_cast<std::size_t>(j)] = s.v_lower.get(j);
            u_perm[static_cast<std::size_t>(j)] = s.u.get(perms.pi[static_cast<std::size_t>(j)]);
        }
        CHECK(trellis_membership(t, u, &zero, vu));
        CHECK(trellis_membership(t, u_perm, &zero, vl));
    }
    CHECK(found_zero);
}

TEST_CASE("folding: zero chain and single-instant chains are fixed points", "[oracle]") {
    const int n = 4;
    CoupledChain chain;
    chain.block_length = n;
    chain.coupling_length = 3;
    chain.sections.assign(3, CodewordTriple{BitVec(n), BitVec(n), BitVec(n)});
    CHECK(fold_chain(chain).weight() == 0);

    chain.sections[1].u.set(2, true);
    chain.sections[1].v_lower.set(0, true);
    const auto folded = fold_chain(chain);
    CHECK(folded == chain.sections[1]);
}

TEST_CASE("every coupled chain folds into the uncoupled code without weight gain",
          "[oracle]") {
    testing::DetRng rng{2026};
    for (int n : {3, 7, 8}) {
        for (int trial = 0; trial < 3; ++trial) {
            const BccPermutations perms =
                trial == 0 ? identity_perms(n)
                           : BccPermutations{testing::random_permutation(rng, n),
                                             testing::random_permutation(rng, n),
                                             testing::random_permutation(rng, n)};
            const auto uncoupled = enumerate_uncoupled_bcc(bcc_gen(), bcc_gen(), perms, n);
            const std::set<CodewordTriple> uncoupled_set(uncoupled.begin(), uncoupled.end());
            for (int L : {2, 3}) {
                if (n * L > 24) continue;
                const auto chains = enumerate_coupled_bcc(bcc_gen(), bcc_gen(), perms, n, L);
                CHECK((chains.size() & (chains.size() - 1)) == 0);
                for (const auto& chain : chains) {
                    const auto folded = fold_chain(chain);
                    CHECK(uncoupled_set.count(folded) == 1);
                    CHECK(folded.weight() <= chain.weight());
                }
            }
        }
    }
}

TEST_CASE("min_distance flags the trivial set and reports the lightest word", "[oracle]") {
    std::vector<CodewordTriple> words{{BitVec(5), BitVec(5), BitVec(5)}};
    CHECK_FALSE(min_distance(words).has_value());
    CodewordTriple w5{BitVec(5), BitVec(5), BitVec(5)};
    w5.u.set(0, true);
    w5.u.set(1, true);
    w5.v_upper.set(0, true);
    w5.v_upper.set(3, true);
    w5.v_lower.set(4, true);
    words.push_back(w5);
    CHECK(min_distance(words) == 5);
}

TEST_CASE("coupled minimum distance dominates the uncoupled one", "[oracle]") {
    testing::DetRng rng{99};
    const int n = 3, L = 2;
    for (int trial = 0; trial < 8; ++trial) {
        const BccPermutations perms{testing::random_permutation(rng, n),
                                    testing::random_permutation(rng, n),
                                    testing::random_permutation(rng, n)};
        const auto d_unc = min_distance(enumerate_uncoupled_bcc(bcc_gen(), bcc_gen(), perms, n));
        const auto d_cpl = min_distance(enumerate_coupled_bcc(bcc_gen(), bcc_gen(), perms, n, L));
        if (d_cpl) {
            REQUIRE(d_unc.has_value());
            CHECK(*d_cpl >= *d_unc);
        }
    }
}

TEST_CASE("PCC N=2 exhaustive average matches the analytic formula", "[oracle]") {
    const auto gen = GeneratorSpec::from_text("1,5/7");
    const auto oracle = exhaustive_ensemble_average(EnsembleKind::kPcc, gen, gen, 2);
    const auto table = component_wef(gen, 2, 6);
    const auto analytic = pcc_average(table, table, 2);
    CHECK(oracle.coefficients == analytic.coefficients);
    CHECK(oracle.coefficient(0, 0) == 1);
}

TEST_CASE("exhaustive enumeration size limits produce usage errors", "[oracle]") {
    const auto pcc = GeneratorSpec::from_text("1,5/7");
    CHECK_THROWS_AS(exhaustive_ensemble_average(EnsembleKind::kPcc, pcc, pcc, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_ensemble_average(EnsembleKind::kBcc, bcc_gen(), bcc_gen(), 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_uncoupled_bcc(bcc_gen(), bcc_gen(), identity_perms(13), 13),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_coupled_bcc(bcc_gen(), bcc_gen(), identity_perms(13), 13, 2),
                    std::invalid_argument);
}
