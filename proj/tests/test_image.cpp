#include <cmath>

#include "doctest.h"
#include "dwmc/errors.hpp"
#include "dwmc/image.hpp"
#include "dwmc/pgm.hpp"
#include "test_util.hpp"

using namespace dwmc;

TEST_CASE("pgm read scales 8-bit samples to [0,1]") {
    testutil::TempDir tmp;
    const std::string path = tmp.file("a.pgm");
    testutil::spit(path, std::string("P5\n2 2\n255\n") + '\0' + '\xff' + '\x80' + '\x40');
    const Band b = read_band(path);
    CHECK(b.grid().width == 2);
    CHECK(b.grid().height == 2);
    CHECK(b.values()[0] == 0.0);
    CHECK(b.values()[1] == 1.0);
    CHECK(b.values()[2] == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
    CHECK(b.values()[3] == doctest::Approx(64.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("pgm write encodes with round-half-up") {
    testutil::TempDir tmp;
    const std::string path = tmp.file("b.pgm");
    write_band(Band(Grid{3, 1}, {0.0, 1.0, 0.5}), path, 8);
    const std::string raw = testutil::slurp(path);
    const std::string payload = raw.substr(raw.size() - 3);
    CHECK(static_cast<unsigned char>(payload[0]) == 0);
    CHECK(static_cast<unsigned char>(payload[1]) == 255);
    CHECK(static_cast<unsigned char>(payload[2]) == 128);  // 127.5 rounds up
}

TEST_CASE("pgm round-trip stays within half a quantum") {
    testutil::TempDir tmp;
    std::vector<double> values;
    for (int i = 0; i < 64; ++i) values.push_back(i / 63.0);
    const Band b(Grid{8, 8}, values);
    for (int bits : {8, 16}) {
        const std::string path = tmp.file("rt.pgm");
        write_band(b, path, bits);
        const Band back = read_band(path);
        const double maxval = bits == 8 ? 255.0 : 65535.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            CHECK(std::abs(back.values()[i] - values[i]) <= 1.0 / (2.0 * maxval));
    }
}

TEST_CASE("pgm rejects bad inputs") {
    testutil::TempDir tmp;
    const std::string path = tmp.file("bad.pgm");
    SUBCASE("ascii P2 header") {
        testutil::spit(path, "P2\n2 2\n255\n0 1 2 3\n");
        CHECK_THROWS_AS(read_band(path), ConfigError);
    }
    SUBCASE("truncated payload") {
        testutil::spit(path, std::string("P5\n2 2\n255\n") + '\0' + '\x01');
        CHECK_THROWS_AS(read_band(path), ConfigError);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(read_band(tmp.file("nope.pgm")), ConfigError); }
    SUBCASE("non-numeric dimension") {
        testutil::spit(path, "P5\nx 2\n255\n");
        CHECK_THROWS_AS(read_band(path), ConfigError);
    }
}

TEST_CASE("16-bit pgm is big-endian") {
    testutil::TempDir tmp;
    const std::string path = tmp.file("be.pgm");
    write_band(Band(Grid{1, 1}, {1.0}), path, 16);
    const std::string raw = testutil::slurp(path);
    CHECK(static_cast<unsigned char>(raw[raw.size() - 2]) == 0xff);
    CHECK(static_cast<unsigned char>(raw[raw.size() - 1]) == 0xff);
}

TEST_CASE("stack_bands validates shape") {
    const Band b64(Grid{4, 4}, std::vector<double>(16, 0.5));
    const Band b32(Grid{2, 2}, std::vector<double>(4, 0.5));

    const MultispectralImage img = stack_bands({b64, b64, b64}, {0, 500, 1000});
    CHECK(img.band_count() == 3);
    CHECK(img.pixel(1, 1) == std::vector<double>{0.5, 0.5, 0.5});

    CHECK(stack_bands({b64}, {0}).band_count() == 1);
    CHECK_THROWS_AS(stack_bands({b64, b32}, {0, 500}), ConfigError);
    CHECK_THROWS_AS(stack_bands({b64, b64}, {0}), ConfigError);
    CHECK_THROWS_AS(stack_bands({b64, b64}, {500, 500}), ConfigError);
}

TEST_CASE("label map invariants") {
    CHECK_THROWS_AS(LabelMap(Grid{2, 2}, {0, 1, 2, 3}, 3), ConfigError);
    const LabelMap m(Grid{2, 2}, {0, 1, 2, 3}, 4);
    CHECK(m.at(1, 1) == 3);
}

TEST_CASE("label map pgm round-trip") {
    testutil::TempDir tmp;
    const LabelMap m(Grid{2, 2}, {0, 3, 1, 2}, 4);
    write_label_map(m, tmp.file("l.pgm"));
    const LabelMap back = read_label_map(tmp.file("l.pgm"));
    CHECK(back.labels() == m.labels());
    CHECK(back.class_count() == 4);
}

TEST_CASE("add_noise basics") {
    const Band b(Grid{64, 64}, std::vector<double>(64 * 64, 0.5));
    const MultispectralImage img = stack_bands({b}, {0});

    SUBCASE("sigma zero is the identity") {
        const MultispectralImage out = add_noise(img, 0.0, 7);
        CHECK(out.band(0).values() == b.values());
    }
    SUBCASE("same seed gives identical output") {
        const MultispectralImage a = add_noise(img, 0.05, 42);
        const MultispectralImage c = add_noise(img, 0.05, 42);
        CHECK(a.band(0).values() == c.band(0).values());
    }
    SUBCASE("sample standard deviation tracks sigma") {
        const MultispectralImage out = add_noise(img, 0.05, 1);
        double mean = 0.0;
        for (double v : out.band(0).values()) mean += v;
        mean /= out.band(0).values().size();
        double var = 0.0;
        for (double v : out.band(0).values()) var += (v - mean) * (v - mean);
        var /= out.band(0).values().size() - 1;
        const double sd = std::sqrt(var);
        CHECK(sd > 0.045);
        CHECK(sd < 0.055);
    }
    SUBCASE("outputs stay in range") {
        const MultispectralImage out = add_noise(img, 0.8, 3);
        for (double v : out.band(0).values()) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}
