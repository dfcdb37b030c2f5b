#include <doctest.h>

#include <numbers>
#include <random>

#include "ellperc/errors.hpp"
#include "ellperc/events.hpp"
#include "ellperc/raster.hpp"

using namespace ellperc;

TEST_SUITE("geometry") {

TEST_CASE("raster of an empty scene is vacant") {
    const Box region = make_box(4.0, 1.0);
    const Raster r = rasterize_scene({}, region, 64);
    CHECK(r.covered_count() == 0);
    for (int j = 0; j < r.ny(); ++j)
        for (int i = 0; i < r.nx(); ++i) CHECK(r.far(i, j));
    CHECK(raster_covered_crossing(r, true) == Verdict::no);
    CHECK(raster_vacant_lr(r) == Verdict::yes);
}

TEST_CASE("raster of a covering grain is covered") {
    const Box region = make_box(4.0, 1.0);
    const std::vector<Grain> g{make_disk({0, 0}, 10.0)};
    const Raster r = rasterize_scene(g, region, 64);
    CHECK(r.covered_count() == static_cast<std::size_t>(r.nx()) * r.ny());
    CHECK(raster_covered_crossing(r, true) == Verdict::yes);
    CHECK(raster_vacant_lr(r) == Verdict::no);
}

TEST_CASE("raster budget and resolution limits") {
    const Box region = make_box(4.0, 1.0);
    CHECK_THROWS_AS(rasterize_scene({}, region, 32), DomainError);
    CHECK_THROWS_AS(rasterize_scene({}, region, 4096, std::size_t{1} << 20), ResourceLimit);
}

TEST_CASE("raster classes are certified against exact predicates") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> U(-4, 4), A(-1.5, 1.5);
    const Box region = make_box(8.0, 1.0);
    std::vector<Grain> grains;
    for (int i = 0; i < 12; ++i) grains.push_back(make_ellipse({U(eng), U(eng)}, 1.0 + std::abs(U(eng)), A(eng)));
    const Raster r = rasterize_scene(grains, region, 256);
    long agree = 0, total = 0;
    for (int j = 0; j < r.ny(); j += 3)
        for (int i = 0; i < r.nx(); i += 3) {
            const Point c = r.center(i, j);
            bool in = false;
            for (const auto& g : grains) in = in || point_in_grain(c, g);
            agree += in == r.covered(i, j);
            ++total;
            const double hw = 0.5 * r.pixel_width(), hh = 0.5 * r.pixel_height();
            for (Point corner : {Point{c.x - hw, c.y - hh}, Point{c.x + hw, c.y + hh}, Point{c.x - hw, c.y + hh}}) {
                bool cin = false;
                for (const auto& g : grains) cin = cin || point_in_grain(corner, g);
                if (r.deep(i, j)) CHECK(cin);
                if (r.far(i, j)) CHECK_FALSE(cin);
            }
        }
    CHECK(agree >= 0.99 * total);
}

TEST_CASE("raster crossing verdicts on a two-disk chain") {
    const Box region = make_box(2.0, 1.0);
    const std::vector<Grain> chain{make_disk({-0.8, 0}, 1.0), make_disk({0.8, 0}, 1.0)};
    const Raster r = rasterize_scene(chain, region, 256);
    CHECK(raster_covered_crossing(r, true) == Verdict::yes);
    CHECK(covered_crossing(chain, region, Axis::horizontal));
}

TEST_CASE("raster annulus connection") {
    const std::vector<Grain> big{make_disk({0, 0}, 4.0)};
    const Raster r = rasterize_scene(big, make_box(10.0, 1.0), 256);
    CHECK(raster_annulus_connection(r, 1.0, 3.0) == Verdict::yes);
    const Raster empty = rasterize_scene({}, make_box(10.0, 1.0), 256);
    CHECK(raster_annulus_connection(empty, 1.0, 3.0) == Verdict::no);
}

TEST_CASE("grid crossing uses edge adjacency") {
    // Diagonal staircase: corner contacts only.
    const std::vector<std::uint8_t> diag{1, 0, 0, 1};
    CHECK_FALSE(grid_crosses_lr(diag, 2, 2));
    const std::vector<std::uint8_t> row{0, 0, 1, 1};
    CHECK(grid_crosses_lr(row, 2, 2));
    const std::vector<std::uint8_t> snake{1, 0, 0, 1, 1, 1, 0, 0, 1};
    CHECK(grid_crosses_lr(snake, 3, 3));
}

}  // TEST_SUITE
