#include <stdio.h>
#include <string.h>

#include "tvws_fcca.h"

static const char *TOPOLOGY =
    "area_km = 10.0\n"
    "[radio]\n"
    "tx_power_dbm = 18.0\n"
    "tx_gain_db = 10.0\n"
    "rx_gain_db = 0.0\n"
    "cable_loss_db = 2.0\n"
    "noise_figure_db = 7.0\n"
    "tx_height_m = 30.0\n"
    "rx_height_m = 5.0\n"
    "center_freq_mhz = 500.0\n"
    "rx_sensitivity_dbm = -101.0\n"
    "[mac]\n"
    "sim_time_s = 2.0\n"
    "[[enb]]\n"
    "position = [2.0, 5.0]\n"
    "cpes = [[1.0, 5.0]]\n"
    "[[enb]]\n"
    "position = [5.0, 5.0]\n"
    "cpes = [[5.0, 4.0]]\n"
    "[[enb]]\n"
    "position = [8.0, 5.0]\n"
    "cpes = [[9.0, 5.0]]\n";

#define CHECK(call)                                                          \
    do {                                                                     \
        TvwsStatus s_ = (call);                                              \
        if (s_ != TVWS_STATUS_OK) {                                          \
            fprintf(stderr, "%s failed (%d): %s\n", #call, (int)s_,          \
                    tvws_last_error() ? tvws_last_error() : "?");            \
            return 1;                                                        \
        }                                                                    \
    } while (0)

int main(void) {
    TvwsRadioParams radio = tvws_radio_params_reference();
    double radius = 0.0;
    CHECK(tvws_coverage_radius(&radio, &radius));
    if (radius < 2.9 || radius > 3.1) return 2;

    TvwsTopology *topo = NULL;
    CHECK(tvws_topology_from_toml(TOPOLOGY, &topo));
    TvwsOutcome *outcome = NULL;
    CHECK(tvws_allocate(topo, NULL, 0.75, &outcome));

    TvwsAllocation *mdca = NULL;
    CHECK(tvws_outcome_allocation(outcome, TVWS_CANDIDATE_MDCA, &mdca));
    char text[128];
    size_t needed = 0;
    CHECK(tvws_allocation_text(mdca, text, sizeof text, &needed));
    if (strcmp(text, "D 0 D 0\n0 D 0 D\nD 0 D 0\n") != 0) return 3;

    TvwsReport *report = NULL;
    CHECK(tvws_simulate(topo, mdca, NULL, &report));
    double jfi = 0.0, total = 0.0;
    CHECK(tvws_report_summary(report, &jfi, &total));
    if (!(jfi > 0.0 && jfi <= 1.0) || !(total > 0.0)) return 4;

    if (tvws_topology_from_toml("area_km = ", &topo) != TVWS_STATUS_PARSE) return 5;
    if (tvws_last_error() == NULL) return 6;

    printf("radius %.3f km, MDCA jfi %.4f, total %.1f Mbps\n", radius, jfi, total / 1e6);
    tvws_report_free(report);
    tvws_allocation_free(mdca);
    tvws_outcome_free(outcome);
    tvws_topology_free(topo);
    return 0;
}
