#include <math.h>
#include <stdio.h>
#include <string.h>

#include "hubnet.h"

#define CHECK(expr)                                                        \
  do {                                                                     \
    HubnetStatus st_ = (expr);                                             \
    if (st_ != HUBNET_STATUS_OK) {                                         \
      const char *msg = hubnet_last_error();                               \
      fprintf(stderr, "%s failed: %d %s\n", #expr, st_, msg ? msg : "");   \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  HubnetTopologyConfig cfg;
  CHECK(hubnet_topology_config_default(30, &cfg));
  cfg.seed = 7;
  HubnetNetwork *net = NULL;
  CHECK(hubnet_network_generate(&cfg, &net));
  size_t edges = hubnet_network_edge_count(net);
  HubnetMetrics m;
  CHECK(hubnet_network_metrics(net, &m));
  hubnet_network_free(net);

  cfg.density = 2.0;
  if (hubnet_network_generate(&cfg, &net) != HUBNET_STATUS_INVALID_CONFIG) {
    return 2;
  }
  if (hubnet_last_error() == NULL || strlen(hubnet_last_error()) == 0) {
    return 3;
  }

  double series[50];
  CHECK(hubnet_mackey_glass(50, 0, 1.0, series, NULL));
  if (fabs(series[49] - 1.0) > 1e-9) {
    return 4;
  }
  printf("edges=%zu cv=%.6f\n", edges, m.cv);
  return 0;
}
