#include <catch2/catch_amalgamated.hpp>

#include "trc/image_io.hpp"
#include "trc/mask.hpp"
#include "trc/metrics.hpp"
#include "trc/tensorize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"

using Catch::Approx;
using trc::DenseTensor;
using trc::FrameDims;
using trc::ImageBuffer;
using trc::MaskKind;
using trc::MaskSpec;
using trc::Shape;
using trc::StripeAxis;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ImageBuffer test_image(std::int64_t h, std::int64_t w, std::int64_t c) {
    ImageBuffer img;
    img.height = h;
    img.width = w;
    img.channels = c;
    img.pixels.resize(static_cast<std::size_t>(h * w * c));
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        img.pixels[i] = static_cast<double>((i * 37) % 256) / 255.0;
    }
    return img;
}

}  // namespace

TEST_CASE("pixmap save/load round-trips bytes and values") {
    const auto img = test_image(5, 7, 3);
    const auto path = temp_file("trc_roundtrip.ppm");
    trc::save_pixmap(img, path.string());

    const auto loaded = trc::load_pixmap(path.string());
    REQUIRE(loaded.height == 5);
    REQUIRE(loaded.width == 7);
    REQUIRE(loaded.channels == 3);
    REQUIRE(loaded.pixels == img.pixels);

    const auto path2 = temp_file("trc_roundtrip2.ppm");
    trc::save_pixmap(loaded, path2.string());
    std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    REQUIRE(bytes_a == bytes_b);
}

TEST_CASE("P6 header parsing") {
    const auto path = temp_file("trc_small.ppm");
    std::string payload;
    for (int i = 0; i < 12; ++i) payload.push_back(static_cast<char>(10 * i));
    write_bytes(path, "P6\n2 2\n255\n" + payload);

    const auto img = trc::load_pixmap(path.string());
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    REQUIRE(img.channels == 3);
    REQUIRE(img.pixels.size() == 12);
    for (int i = 0; i < 12; ++i) CHECK(img.pixels[static_cast<std::size_t>(i)] == Approx(10.0 * i / 255.0));
}

TEST_CASE("P5 grayscale gives one channel") {
    const auto path = temp_file("trc_gray.pgm");
    write_bytes(path, "P5\n3 2\n255\n" + std::string(6, '\x40'));
    const auto img = trc::load_pixmap(path.string());
    REQUIRE(img.channels == 1);
    REQUIRE(img.width == 3);
    REQUIRE(img.height == 2);
    CHECK(img.pixels[0] == Approx(64.0 / 255.0));
}

TEST_CASE("malformed pixmaps fail with byte offsets") {
    const auto path = temp_file("trc_bad.ppm");

    write_bytes(path, "P7\n2 2\n255\n" + std::string(12, 'x'));
    CHECK_THROWS_AS(trc::load_pixmap(path.string()), trc::PixmapParseError);

    write_bytes(path, "P6\n2 2\n65535\n" + std::string(12, 'x'));
    CHECK_THROWS_WITH(trc::load_pixmap(path.string()),
                      Catch::Matchers::ContainsSubstring("maxval") &&
                          Catch::Matchers::ContainsSubstring("at byte"));

    write_bytes(path, "P6\n2 2\n255\n" + std::string(5, 'x'));  // needs 12 payload bytes
    try {
        trc::load_pixmap(path.string());
        FAIL("expected truncation error");
    } catch (const trc::PixmapParseError& e) {
        CHECK(std::string(e.what()).find("truncated") != std::string::npos);
        CHECK(e.byte_offset == 16);  // file size
    }

    write_bytes(path, "P6\n2 x\n255\n");
    CHECK_THROWS_AS(trc::load_pixmap(path.string()), trc::PixmapParseError);
}

TEST_CASE("mr zero observes everything") {
    const auto mask = trc::make_mask({4, 5, 3, 1}, MaskSpec{MaskKind::RandomEntries, 0.0, 1});
    for (auto m : mask) REQUIRE(m == 1);
}

TEST_CASE("stripe masks remove whole columns") {
    MaskSpec spec;
    spec.kind = MaskKind::Stripes;
    spec.missing_ratio = 0.3;
    spec.seed = 9;
    const FrameDims dims{6, 10, 3, 1};
    const auto mask = trc::make_mask(dims, spec);

    // column is missing iff every entry of it is missing; exactly 3 columns
    std::vector<bool> col_missing(10, false);
    for (std::int64_t w = 0; w < 10; ++w) {
        bool all_missing = true;
        bool any_missing = false;
        for (std::int64_t h = 0; h < 6; ++h) {
            for (std::int64_t c = 0; c < 3; ++c) {
                const bool missing = !mask[static_cast<std::size_t>((h * 10 + w) * 3 + c)];
                all_missing = all_missing && missing;
                any_missing = any_missing || missing;
            }
        }
        REQUIRE(all_missing == any_missing);  // column structure
        col_missing[static_cast<std::size_t>(w)] = all_missing;
    }
    std::int64_t n_missing = 0;
    for (bool b : col_missing) n_missing += b;
    REQUIRE(n_missing == 3);
}

TEST_CASE("row stripes remove whole rows") {
    MaskSpec spec;
    spec.kind = MaskKind::Stripes;
    spec.missing_ratio = 0.5;
    spec.seed = 10;
    spec.stripe_axis = StripeAxis::Rows;
    const auto mask = trc::make_mask({4, 3, 1, 1}, spec);
    std::int64_t missing_rows = 0;
    for (std::int64_t h = 0; h < 4; ++h) {
        std::int64_t row_missing = 0;
        for (std::int64_t w = 0; w < 3; ++w) row_missing += !mask[static_cast<std::size_t>(h * 3 + w)];
        REQUIRE((row_missing == 0 || row_missing == 3));
        missing_rows += row_missing == 3;
    }
    REQUIRE(missing_rows == 2);
}

TEST_CASE("random masks hit the requested ratio within binomial bounds") {
    const auto mask = trc::random_entry_mask(10000, 0.5, 123);
    std::int64_t missing = 0;
    for (auto m : mask) missing += m == 0;
    const double fraction = static_cast<double>(missing) / 10000.0;
    CHECK(fraction >= 0.47);
    CHECK(fraction <= 0.53);
}

TEST_CASE("masks are deterministic per seed") {
    MaskSpec spec;
    spec.kind = MaskKind::Stripes;
    spec.missing_ratio = 0.4;
    spec.seed = 77;
    const FrameDims dims{8, 8, 3, 2};
    CHECK(trc::make_mask(dims, spec) == trc::make_mask(dims, spec));
    spec.seed = 78;
    CHECK(trc::make_mask({8, 8, 3, 2}, MaskSpec{MaskKind::Stripes, 0.4, 77}) !=
          trc::make_mask(dims, spec));
}

TEST_CASE("video stripes are shared across frames unless per-frame is set") {
    MaskSpec spec;
    spec.kind = MaskKind::Stripes;
    spec.missing_ratio = 0.4;
    spec.seed = 5;
    const FrameDims dims{4, 10, 1, 3};
    const auto shared = trc::make_mask(dims, spec);
    const std::size_t per_frame = 4 * 10;
    for (std::size_t f = 1; f < 3; ++f) {
        for (std::size_t i = 0; i < per_frame; ++i) {
            REQUIRE(shared[f * per_frame + i] == shared[i]);
        }
    }

    spec.per_frame_stripes = true;
    const auto independent = trc::make_mask(dims, spec);
    bool any_differ = false;
    for (std::size_t f = 1; f < 3; ++f) {
        for (std::size_t i = 0; i < per_frame; ++i) {
            any_differ = any_differ || independent[f * per_frame + i] != independent[i];
        }
    }
    CHECK(any_differ);
}

TEST_CASE("mask specs are validated") {
    CHECK_THROWS_AS(trc::make_mask({4, 4, 1, 1}, MaskSpec{MaskKind::RandomEntries, 1.0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(trc::random_entry_mask(10, -0.1, 0), std::invalid_argument);
    // 0.95 of 10 columns rounds up to 10: nothing left
    CHECK_THROWS_AS(trc::make_mask({4, 10, 1, 1}, MaskSpec{MaskKind::Stripes, 0.95, 0}),
                    std::invalid_argument);
}

TEST_CASE("tensorization round-trips pixels bit-exactly") {
    const auto img = test_image(8, 4, 3);
    const auto t = trc::tensorize(img, Shape{4, 4, 3, 2});
    REQUIRE(t.shape() == Shape{4, 4, 3, 2});
    const auto back = trc::detensorize(t, 8, 4, 3);
    REQUIRE(back.pixels == img.pixels);
    REQUIRE(back.height == 8);
    REQUIRE(back.width == 4);

    CHECK_THROWS_AS(trc::tensorize(img, Shape{4, 4, 4}), std::invalid_argument);
}

TEST_CASE("the 9th-order image tensorization has the documented layout") {
    const auto img = test_image(256, 256, 3);
    const auto t = trc::tensorize(img, Shape{4, 4, 4, 4, 4, 4, 4, 4, 3});
    REQUIRE(t.size() == 196608);
    // channel fastest, then width, then height
    for (const auto [h, w, c] : {std::array<std::int64_t, 3>{0, 0, 1}, {0, 3, 2}, {17, 200, 0}}) {
        const auto p = trc::tensorize_position({256, 256, 3, 1}, 0, h, w, c);
        REQUIRE(t[p] == img.at(h, w, c));
    }
}

TEST_CASE("frame stacks tensorize with the frame index slowest") {
    std::vector<trc::ImageBuffer> frames{test_image(4, 6, 3), test_image(4, 6, 3)};
    for (auto& v : frames[1].pixels) v = std::min(1.0, v + 1.0 / 255.0);
    const auto t = trc::tensorize_stack(frames, Shape{6, 4, 3, 2});
    const auto back = trc::detensorize_stack(t, {4, 6, 3, 2});
    REQUIRE(back.size() == 2);
    REQUIRE(back[0].pixels == frames[0].pixels);
    REQUIRE(back[1].pixels == frames[1].pixels);

    std::vector<trc::ImageBuffer> ragged{test_image(4, 6, 3), test_image(4, 5, 3)};
    CHECK_THROWS_AS(trc::tensorize_stack(ragged, Shape{6, 4, 3, 2}), std::invalid_argument);
}

TEST_CASE("masks ride the same tensorization mapping as pixels") {
    MaskSpec spec;
    spec.kind = MaskKind::Stripes;
    spec.missing_ratio = 0.25;
    spec.seed = 3;
    const FrameDims dims{4, 8, 3, 1};
    const auto image_mask = trc::make_mask(dims, spec);
    const auto tensor_mask = trc::tensorize_mask(image_mask, dims);
    for (std::int64_t h = 0; h < 4; ++h) {
        for (std::int64_t w = 0; w < 8; ++w) {
            for (std::int64_t c = 0; c < 3; ++c) {
                REQUIRE(tensor_mask[static_cast<std::size_t>(trc::tensorize_position(dims, 0, h, w, c))] ==
                        image_mask[static_cast<std::size_t>((h * 8 + w) * 3 + c)]);
            }
        }
    }
}

TEST_CASE("rse matches its definition") {
    trc::RandomStream rng(51);
    const auto t = oracles::random_tensor(Shape{3, 4}, rng);

    CHECK(trc::rse(t, t) == 0.0);

    DenseTensor twice = t;
    for (std::int64_t i = 0; i < twice.size(); ++i) twice[i] *= 2.0;
    CHECK(trc::rse(twice, t) == Approx(1.0).epsilon(1e-12));

    CHECK(trc::rse(DenseTensor(t.shape()), t) == Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(trc::rse(t, DenseTensor(t.shape())), std::invalid_argument);
    CHECK_THROWS_AS(trc::rse(t, DenseTensor(Shape{4, 3})), std::invalid_argument);
}
