#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "wefkit/ensemble.hpp"
#include "wefkit/oracle.hpp"
#include "wefkit/pipeline.hpp"

using namespace wefkit;

TEST_CASE("binomial basics", "[ensemble]") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(512, 0) == 1);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
}

TEST_CASE("binomial(512, 256) agrees with the Pascal recurrence", "[ensemble]") {
    // independent route: build row 512 of Pascal's triangle by repeated addition
    std::vector<mpz_class> row{1};
    for (int n = 1; n <= 512; ++n) {
        std::vector<mpz_class> next(static_cast<std::size_t>(n) + 1);
        next[0] = 1;
        next[static_cast<std::size_t>(n)] = 1;
        for (int k = 1; k < n; ++k)
            next[static_cast<std::size_t>(k)] =
                row[static_cast<std::size_t>(k - 1)] + row[static_cast<std::size_t>(k)];
        row = std::move(next);
    }
    CHECK(binomial(512, 256) == row[256]);
    CHECK(binomial(512, 100) == row[100]);
}

TEST_CASE("pcc averaging: all-zero coefficient and empty factors", "[ensemble]") {
    const auto gen = GeneratorSpec::from_text("1,5/7");
    const int n = 6;
    const auto table = component_wef(gen, n, 3 * n);
    const auto e = pcc_average(table, table, n);
    CHECK(e.coefficient(0, 0) == 1);
    CHECK(e.num_codes == factorial(n));

    // an information weight absent from the upper table cannot appear in the average
    WefTable empty_i1;
    empty_i1.arity = 2;
    empty_i1.block_sections = n;
    empty_i1.w_max = 3 * n;
    empty_i1.coefficients[pack_exponents(0, 0)] = 1;  // only the zero codeword
    const auto sparse = pcc_average(empty_i1, table, n);
    for (const auto& [key, coeff] : sparse.coefficients) CHECK(unpack_exponents(key)[0] == 0);
}

TEST_CASE("pcc averaging equals the exhaustive permutation sweep", "[ensemble]") {
    const auto gen = GeneratorSpec::from_text("1,5/7");
    for (int n : {2, 3, 4}) {
        const auto table = component_wef(gen, n, 3 * n);
        const auto analytic = pcc_average(table, table, n);
        const auto oracle = exhaustive_ensemble_average(EnsembleKind::kPcc, gen, gen, n);
        CHECK(analytic.coefficients == oracle.coefficients);
    }
}

TEST_CASE("bcc averaging equals the exhaustive permutation-triple sweep", "[ensemble]") {
    const auto gen = GeneratorSpec::from_text("1,0,1/7;0,1,5/7");
    const int n = 3;
    const auto table = component_wef(gen, n, 3 * n);
    const auto analytic = bcc_average(table, table, n);
    const auto oracle = exhaustive_ensemble_average(EnsembleKind::kBcc, gen, gen, n);
    CHECK(analytic.coefficients == oracle.coefficients);
    CHECK(analytic.coefficient(0, 0) == 1);
    CHECK(analytic.num_codes == oracle.num_codes);
}

TEST_CASE("bcc averaging is symmetric in the component tables", "[ensemble]") {
    // distinct components: swap which input feeds the parity taps
    const auto a = component_wef(GeneratorSpec::from_text("1,0,1/7;0,1,5/7"), 5, 15);
    const auto b = component_wef(GeneratorSpec::from_text("1,0,5/7;0,1,1/7"), 5, 15);
    const auto ab = bcc_average(a, b, 5);
    const auto ba = bcc_average(b, a, 5);
    CHECK(ab.coefficients == ba.coefficients);
}

TEST_CASE("terms outside the binomial support contribute zero", "[ensemble]") {
    const int n = 3;
    WefTable synthetic;
    synthetic.arity = 3;
    synthetic.block_sections = n;
    synthetic.w_max = 20;
    synthetic.coefficients[pack_exponents(0, 0, 0)] = 1;
    synthetic.coefficients[pack_exponents(1, 4, 1)] = 7;  // second-input weight 4 > N
    const auto e = bcc_average(synthetic, synthetic, n);
    CHECK(e.coefficients.size() == 1);
    CHECK(e.coefficient(0, 0) == 1);
}

TEST_CASE("ensemble averaging rejects mismatched inputs", "[ensemble]") {
    const auto pcc_gen = GeneratorSpec::from_text("1,5/7");
    const auto bcc_gen = GeneratorSpec::from_text("1,0,1/7;0,1,5/7");
    const auto t12 = component_wef(pcc_gen, 4, 12);
    const auto t23 = component_wef(bcc_gen, 4, 12);
    const auto t23_other = component_wef(bcc_gen, 5, 12);
    CHECK_THROWS_AS(pcc_average(t23, t23, 4), std::invalid_argument);
    CHECK_THROWS_AS(bcc_average(t12, t12, 4), std::invalid_argument);
    CHECK_THROWS_AS(pcc_average(t12, t12, 5), std::invalid_argument);
    CHECK_THROWS_AS(bcc_average(t23, t23_other, 4), std::invalid_argument);
}

TEST_CASE("ensemble_total_weight regroups by total weight", "[ensemble]") {
    EnsembleWef e;
    e.kind = EnsembleKind::kBcc;
    e.N = 4;
    e.w_max = 12;
    e.coefficients[pack_exponents(0, 0)] = 1;
    auto a_w = ensemble_total_weight(e);
    CHECK(a_w == std::map<int, mpq_class>{{0, 1}});

    e.coefficients[pack_exponents(1, 2)] = mpq_class(1, 3);
    e.coefficients[pack_exponents(2, 1)] = mpq_class(1, 6);
    a_w = ensemble_total_weight(e);
    CHECK(a_w[3] == mpq_class(1, 2));
}

TEST_CASE("oracle regrouped by weight matches ensemble_total_weight", "[ensemble]") {
    const auto gen = GeneratorSpec::from_text("1,0,1/7;0,1,5/7");
    const auto oracle = exhaustive_ensemble_average(EnsembleKind::kBcc, gen, gen, 3);
    const auto a_w = ensemble_total_weight(oracle);
    mpq_class mass = 0;
    for (const auto& [w, coeff] : a_w) {
        CHECK(coeff >= 0);
        mass += coeff;
    }
    mpq_class direct = 0;
    for (const auto& [key, coeff] : oracle.coefficients) direct += coeff;
    CHECK(mass == direct);
}

TEST_CASE("enlarging w_max never changes already-computed coefficients", "[ensemble]") {
    const auto gen = GeneratorSpec::from_text("1,0,1/7;0,1,5/7");
    const auto narrow = build_ensemble(EnsembleKind::kBcc, gen, 8, 8);
    const auto wide = build_ensemble(EnsembleKind::kBcc, gen, 8, 16);
    for (const auto& [key, coeff] : narrow.coefficients) {
        auto it = wide.coefficients.find(key);
        REQUIRE(it != wide.coefficients.end());
        CHECK(it->second == coeff);
    }
    for (const auto& [key, coeff] : wide.coefficients)
        if (total_weight(key) <= 8) CHECK(narrow.coefficient(unpack_exponents(key)[0],
                                                             unpack_exponents(key)[1]) == coeff);
}
