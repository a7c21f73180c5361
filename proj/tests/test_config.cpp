#include <doctest.h>

#include "darboux/errors.hpp"
#include "darboux/run_config.hpp"

using namespace darboux;

TEST_CASE("config round trip") {
    RunConfig cfg;
    CHECK(config_equal(parse_config(emit_config(cfg)), cfg));

    cfg.command = "simulate";
    cfg.example = "e3";
    cfg.gamma = 0.5;
    cfg.t_values = {0.3, 1.0, 2.5};
    cfg.grid_lo = -4.0;
    cfg.grid_hi = 4.0;
    cfg.grid_n = 20;
    cfg.tol = 1e-7;
    cfg.paths = 12345;
    cfg.dt = 5e-4;
    cfg.seed = 998877;
    cfg.bins = 25;
    cfg.x0 = 0.125;
    cfg.out_path = "out.csv";
    CHECK(config_equal(parse_config(emit_config(cfg)), cfg));

    // exact decimal round trip for an awkward double
    cfg.gamma = 0.1 + 0.2;
    CHECK(config_equal(parse_config(emit_config(cfg)), cfg));
}

TEST_CASE("config diagnostics carry line and field names") {
    try {
        parse_config("command=density\nbogus_key=1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
    }
    try {
        parse_config("grid=1:2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("grid") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("tol=abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("no equals sign here\n"), ConfigError);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.grid_n = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.grid_n = 5;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.tol = 1e-6;
    cfg.command = "plot";
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.command = "density";
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("comments and blank lines are ignored") {
    const RunConfig cfg = parse_config("# a comment\n\nexample=e1\n t = 0.5 , 1.5 \n");
    CHECK(cfg.example == "e1");
    REQUIRE(cfg.t_values.size() == 2);
    CHECK(cfg.t_values[0] == 0.5);
    CHECK(cfg.t_values[1] == 1.5);
}

TEST_CASE("number formatting is locale-free and precise") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double17(0.5) == "0.5");
    const std::string s = format_double17(1.0 / 3.0);
    CHECK(s.find(',') == std::string::npos);
    CHECK(s.substr(0, 6) == "0.3333");
}
