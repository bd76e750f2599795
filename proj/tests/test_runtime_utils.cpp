#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common_nodes.hpp"

#include <weft/affinity.hpp>
#include <weft/farm.hpp>
#include <weft/pipeline.hpp>
#include <weft/timing.hpp>

#include <chrono>
#include <memory>
#include <sstream>
#include <thread>

#if defined(__linux__)
#include <sched.h>
#endif

using namespace weft;
using namespace testing_nodes;

TEST_CASE("stopwatch bracket semantics") {
    stopwatch sw;
    CHECK_THROWS_AS(sw.elapsed_ms(), std::logic_error); // unset
    CHECK_THROWS_AS(sw.stop(), std::logic_error);       // stop without start

    sw.start();
    CHECK_THROWS_AS(sw.start(), std::logic_error);      // double start
    CHECK_THROWS_AS(sw.elapsed_ms(), std::logic_error); // still running
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
    sw.stop();
    CHECK(sw.elapsed_ms() >= 9.0);

    sw.start(); // restart measures a fresh interval
    sw.stop();
    CHECK(sw.elapsed_ms() >= 0.0);
    CHECK(sw.elapsed_ms() < 9.0);
}

TEST_CASE("busy spin burns at least the requested wall time") {
    stopwatch sw;
    sw.start();
    busy_spin_for(std::chrono::microseconds(2000));
    sw.stop();
    CHECK(sw.elapsed_ms() >= 2.0);
}

TEST_CASE("total time is positive and bounded below by injected sleeps") {
    struct sleeper final : node {
        svc_result service(item in, node_context&) override {
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
            return svc_result::emit(std::move(in));
        }
    };
    pipeline p;
    p.add_stage(std::make_shared<range_source>(0, 5));
    p.add_stage(std::make_shared<sleeper>());
    p.add_stage(std::make_shared<int_sink>());

    REQUIRE(p.run_and_wait_end().ok);
    CHECK(p.total_time_ms() >= 500.0);
    CHECK(p.work_time_ms() > 0.0);
    CHECK(p.total_time_ms() >= p.work_time_ms());
}

TEST_CASE("work time excludes lifecycle hooks") {
    struct slow_init final : node {
        bool on_init(node_context&) override {
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
            return true;
        }
        svc_result service(item in, node_context&) override {
            return svc_result::emit(std::move(in));
        }
    };
    pipeline p;
    p.add_stage(std::make_shared<range_source>(0, 1));
    p.add_stage(std::make_shared<slow_init>());
    p.add_stage(std::make_shared<int_sink>());

    REQUIRE(p.run_and_wait_end().ok);
    CHECK(p.total_time_ms() >= 200.0);
    CHECK(p.work_time_ms() < p.total_time_ms() / 2.0);
}

TEST_CASE("zero-item run has (near) zero work time") {
    pipeline p;
    p.add_stage(std::make_shared<range_source>(0, 0));
    p.add_stage(std::make_shared<int_sink>());
    REQUIRE(p.run_and_wait_end().ok);
    // only the source's empty activation ran
    CHECK(p.work_time_ms() < 50.0);
}

TEST_CASE("timing queries before a completed run are errors") {
    pipeline p;
    p.add_stage(std::make_shared<range_source>(0, 1));
    CHECK_THROWS_AS(p.total_time_ms(), std::logic_error);
    CHECK_THROWS_AS(p.work_time_ms(), std::logic_error);
    REQUIRE(p.run_and_wait_end().ok);
    CHECK(p.total_time_ms() >= 0.0);
}

TEST_CASE("core_count is positive and stable") {
    const int a = core_count();
    const int b = core_count();
    CHECK(a >= 1);
    CHECK(a == b);
}

TEST_CASE("pin_thread pins to core 0 and rejects out-of-range ids") {
#if defined(__linux__)
    REQUIRE(pin_thread(0) == pin_status::ok);
    cpu_set_t set;
    CPU_ZERO(&set);
    REQUIRE(sched_getaffinity(0, sizeof(set), &set) == 0);
    CHECK(CPU_ISSET(0, &set));
    int count = 0;
    for (int c = 0; c < CPU_SETSIZE; ++c)
        if (CPU_ISSET(static_cast<unsigned>(c), &set)) ++count;
    CHECK(count == 1);
#else
    CHECK(pin_thread(0) == pin_status::unsupported);
#endif
    CHECK(pin_thread(core_count()) == pin_status::error);
    CHECK(pin_thread(-1) == pin_status::error);
}

TEST_CASE("dump_stats prints a notice while tracing is off") {
    pipeline p; // trace defaults to off
    p.add_stage(std::make_shared<range_source>(0, 3));
    p.add_stage(std::make_shared<int_sink>());
    REQUIRE(p.run_and_wait_end().ok);

    std::ostringstream os;
    p.dump_stats(os);
    CHECK(os.str() == "trace not enabled\n");
    CHECK(p.last_stats().empty());
}

TEST_CASE("traced farm stats conserve the task count across workers") {
    farm_options fo;
    fo.trace = true;
    farm f(fo);
    f.add_emitter(std::make_shared<range_source>(0, 10));
    f.add_worker(std::make_shared<increment_worker>());
    f.add_worker(std::make_shared<increment_worker>());

    REQUIRE(f.run_and_wait_end().ok);
    auto stats = f.last_stats();
    REQUIRE(stats.size() == 3); // emitter + 2 workers

    // node ids follow dataflow order: emitter 0, workers 1..2
    CHECK(stats[0].node_id == 0);
    CHECK(stats[0].items == 0); // source activations carry no input
    CHECK(stats[1].items + stats[2].items == 10);

    std::ostringstream os;
    f.dump_stats(os);
    int lines = 0;
    for (char c : os.str())
        if (c == '\n') ++lines;
    CHECK(lines == 3);
    CHECK(os.str().find('\t') != std::string::npos);
}

TEST_CASE("zero-item traced run reports all-zero counters") {
    pipeline_options po;
    po.trace = true;
    pipeline p(po);
    p.add_stage(std::make_shared<range_source>(0, 0));
    p.add_stage(std::make_shared<int_sink>());
    REQUIRE(p.run_and_wait_end().ok);

    for (const auto& s : p.last_stats()) CHECK(s.items == 0);
}

TEST_CASE("node ids are assigned in dataflow order across nesting") {
    pipeline_options po;
    po.trace = true;
    pipeline p(po);

    struct id_probe final : node {
        int seen_id = -1;
        bool on_init(node_context& ctx) override {
            seen_id = ctx.node_id();
            return true;
        }
        svc_result service(item in, node_context&) override {
            return svc_result::emit(std::move(in));
        }
    };

    auto s0 = std::make_shared<id_probe>(); // stage 0 (source-ish forwarding)
    auto f = std::make_shared<farm>();
    auto em = std::make_shared<id_probe>();
    auto w0 = std::make_shared<id_probe>();
    auto w1 = std::make_shared<id_probe>();
    auto co = std::make_shared<id_probe>();
    f->add_emitter(em);
    f->add_worker(w0);
    f->add_worker(w1);
    f->add_collector(co);

    struct quit_source final : node {
        svc_result service(item, node_context&) override { return svc_result::end(); }
    };
    p.add_stage(std::make_shared<quit_source>());
    p.add_stage(s0);
    p.add_stage(f);
    auto sink = std::make_shared<id_probe>();
    p.add_stage(sink);

    REQUIRE(p.run_and_wait_end().ok);
    CHECK(s0->seen_id == 1);
    CHECK(em->seen_id == 2);
    CHECK(w0->seen_id == 3);
    CHECK(w1->seen_id == 4);
    CHECK(co->seen_id == 5);
    CHECK(sink->seen_id == 6);
}
