#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "nocurl/csv.hpp"
#include "nocurl/matrix_ops.hpp"
#include "nocurl/rng.hpp"
#include "nocurl/types.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

using namespace nocurl;

TEST_CASE("edge flow writes mirror bitwise") {
    EdgeFlow y(4);
    y.set(0, 2, 0.3);
    CHECK(y(0, 2) == 0.3);
    CHECK(y(2, 0) == -0.3);
    y.set(2, 0, 1.7);  // writing the lower triangle mirrors too
    CHECK(y(2, 0) == 1.7);
    CHECK(y(0, 2) == -1.7);
    CHECK(y(1, 1) == 0.0);
    CHECK_THROWS_AS(y.set(1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("skew part of random matrices is skew bitwise") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Index d = 2 + Index(rng.below(9));
        Matrix m = testutil::random_matrix(rng, d, d);
        EdgeFlow y = EdgeFlow::skew_part(m);
        for (Index i = 0; i < d; ++i) {
            CHECK(y(i, i) == 0.0);
            for (Index j = 0; j < d; ++j) CHECK(y(i, j) == -y(j, i));
        }
        // and it actually is (m - m^T)/2
        Matrix expected = 0.5 * (m - m.transpose());
        CHECK((y.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("triangle flow alternates exactly") {
    TriangleFlow t(5);
    t.set(1, 2, 4, 0.77);
    CHECK(t(1, 2, 4) == 0.77);
    CHECK(t(2, 1, 4) == -0.77);
    CHECK(t(2, 4, 1) == 0.77);
    CHECK(t(4, 2, 1) == -0.77);
    CHECK(t(4, 1, 2) == 0.77);
    CHECK(t(1, 4, 2) == -0.77);
    CHECK(t(0, 1, 2) == 0.0);
    CHECK(t(1, 1, 2) == 0.0);  // repeated index: alternating functions vanish
    CHECK_THROWS_AS(t.set(1, 1, 2, 1.0), std::invalid_argument);
    t.set(4, 2, 1, 1.0);  // writes respect the given orientation
    CHECK(t(1, 2, 4) == -1.0);
}

TEST_CASE("hadamard matches the entrywise product") {
    Matrix a(2, 2), b(2, 2), want(2, 2);
    a << 0, 2, 3, 0;
    b << 0, -1, 1, 0;
    want << 0, -2, 3, 0;
    CHECK(hadamard(a, b) == want);

    Matrix c(2, 3);
    CHECK_THROWS_AS(hadamard(a, c), std::invalid_argument);
}

TEST_CASE("matrix power: golden case and edge cases") {
    Matrix a(2, 2);
    a << 1, 1, 0, 1;
    Matrix want(2, 2);
    want << 1, 3, 0, 1;
    CHECK(matrix_power(a, 3) == want);
    CHECK(matrix_power(a, 0) == Matrix::Identity(2, 2));

    Matrix rect(2, 3);
    CHECK_THROWS_AS(matrix_power(rect, 2), std::invalid_argument);
    CHECK_THROWS_AS(matrix_power(a, -1), std::invalid_argument);
}

TEST_CASE("matrix power agrees with repeated multiplication") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Index d = 2 + Index(rng.below(5));
        Matrix a = testutil::random_matrix(rng, d, d, -1.0, 1.0);
        Matrix ref = Matrix::Identity(d, d);
        for (long k = 0; k <= 6; ++k) {
            Matrix got = matrix_power(a, k);
            double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
            CHECK((got - ref).cwiseAbs().maxCoeff() / scale <= 1e-12);
            ref = ref * a;
        }
    }
}

TEST_CASE("rng streams are reproducible from the seed") {
    Rng a(123456789);
    Rng b(123456789);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    // interleave draw kinds, then replay from the stored seed
    std::vector<double> first;
    {
        Rng r(42);
        for (int i = 0; i < 200; ++i) {
            first.push_back(r.uniform());
            first.push_back(r.gaussian(0.0, 1.0));
            first.push_back(r.gumbel(0.0, 1.0));
            first.push_back(double(r.below(97)));
        }
    }
    {
        Rng r(42);
        CHECK(r.seed() == 42);
        for (size_t i = 0; i < first.size(); i += 4) {
            CHECK(r.uniform() == first[i]);
            CHECK(r.gaussian(0.0, 1.0) == first[i + 1]);
            CHECK(r.gumbel(0.0, 1.0) == first[i + 2]);
            CHECK(double(r.below(97)) == first[i + 3]);
        }
    }

    Rng c(1), d(2);
    CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("rng draw parameters are validated") {
    Rng r(5);
    CHECK_THROWS_AS(r.gaussian(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(r.gaussian(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(r.uniform(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(r.uniform(2.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(r.gumbel(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(r.below(0), std::invalid_argument);
}

TEST_CASE("gaussian draws have the right moments") {
    Rng r(42);
    const Index n = 100000;
    Vector z = r.draw_gaussian(n, 0.0, 1.0);
    CHECK(z.size() == n);
    CHECK(z.allFinite());
    double mean = z.mean();
    double var = (z.array() - mean).square().sum() / double(n - 1);
    CHECK(std::abs(mean) <= 0.02);
    CHECK(var >= 0.97);
    CHECK(var <= 1.03);

    Vector shifted = Rng(43).draw_gaussian(50000, 3.0, 0.5);
    CHECK(std::abs(shifted.mean() - 3.0) <= 0.02);
}

TEST_CASE("gumbel draws have the Euler-Mascheroni mean") {
    Rng r(42);
    const Index n = 100000;
    Vector z = r.draw_gumbel(n, 0.0, 1.0);
    CHECK(z.allFinite());
    CHECK(std::abs(z.mean() - 0.57721566490153286) <= 0.02);
    // variance pi^2/6
    double mean = z.mean();
    double var = (z.array() - mean).square().sum() / double(n - 1);
    CHECK(std::abs(var - 1.6449340668482264) <= 0.05);
}

TEST_CASE("uniform draws stay in range with the right mean") {
    Rng r(9);
    const Index n = 100000;
    Vector u = r.draw_uniform(n, -1.5, 2.5);
    CHECK(u.size() == n);
    CHECK(u.minCoeff() >= -1.5);
    CHECK(u.maxCoeff() < 2.5);
    CHECK(std::abs(u.mean() - 0.5) <= 0.02);
}

TEST_CASE("below covers its range uniformly") {
    Rng r(17);
    const std::uint64_t n = 10;
    std::vector<int> counts(n, 0);
    for (int i = 0; i < 100000; ++i) {
        std::uint64_t v = r.below(n);
        REQUIRE(v < n);
        counts[size_t(v)]++;
    }
    for (std::uint64_t b = 0; b < n; ++b) {
        CHECK(counts[size_t(b)] > 9000);
        CHECK(counts[size_t(b)] < 11000);
    }
}

TEST_CASE("csv round-trips matrices exactly") {
    Matrix m(2, 3);
    m << 1.0, -2.5, 3.125, 0.1, 1e300, -1e-300;
    Matrix back = matrix_from_csv(matrix_to_csv(m));
    CHECK(back.rows() == 2);
    CHECK(back.cols() == 3);
    CHECK(back == m);

    Rng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        Index rows = 1 + Index(rng.below(8));
        Index cols = 1 + Index(rng.below(8));
        Matrix x(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                x(i, j) = rng.gaussian(0.0, 1.0) * std::pow(10.0, double(rng.below(21)) - 10.0);
        CHECK(matrix_from_csv(matrix_to_csv(x)) == x);
    }
}

TEST_CASE("csv text form is plain rows of dot-decimal values") {
    Matrix m(2, 2);
    m << 1, 2.5, -3, 4;
    CHECK(matrix_to_csv(m) == "1,2.5\n-3,4\n");

    Matrix parsed = matrix_from_csv("1,2\n3,4\n");
    Matrix want(2, 2);
    want << 1, 2, 3, 4;
    CHECK(parsed == want);

    // trailing newline optional
    CHECK(matrix_from_csv("1,2\n3,4") == want);
}

TEST_CASE("csv rejects malformed input with location info") {
    CHECK_THROWS_WITH_AS(matrix_from_csv("1,2\n3\n"),
                         doctest::Contains("row 2"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_csv("1,x\n"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_csv("1,\n2,3\n"), std::invalid_argument);
    CHECK(matrix_from_csv("").size() == 0);
}

TEST_CASE("csv file io round-trips") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "nocurl_csv_test";
    fs::create_directories(dir);
    fs::path file = dir / "m.csv";

    Matrix m(3, 2);
    m << 0.1, 0.2, -0.3, 1e-12, 12345.6789012345, -7;
    write_matrix_csv(m, file);
    CHECK(read_matrix_csv(file) == m);

    CHECK_THROWS_AS(read_matrix_csv(dir / "missing.csv"), std::runtime_error);
    fs::remove_all(dir);
}
