#include "psn/analysis/stats.hpp"

#include <cmath>

#include "psn/analysis/lyapunov.hpp"
#include "psn/analysis/pca.hpp"
#include "psn/analysis/series.hpp"
#include "psn/errors.hpp"

namespace psn {

namespace {

PcaModel flow_pca(const RunResult& run, int flow, const AnalysisParams& ap) {
  if (flow < 0 || flow >= static_cast<int>(run.cwnd.size()))
    throw MissingTrace("no cwnd series recorded for flow " + std::to_string(flow));
  const WindowMatrix wm =
      window_matrix(std::span<const float>(run.cwnd[static_cast<std::size_t>(flow)]),
                    run.sample_dt_s, ap.window_s);
  return pca_project(wm, 2);
}

}  // namespace

StateGraph flow_state_graph(const RunResult& run, int flow, const AnalysisParams& ap) {
  const PcaModel model = flow_pca(run, flow, ap);
  const QuantizationSpec q = fit_quantization(model.projections, ap.grid_bins);
  std::vector<std::pair<Micros, Micros>> bursts;
  if (run.config.perturbation)
    bursts = perturbation_window_list(run.config.duration_s, run.config.perturb_interval_s,
                                      run.config.perturb_burst_s);
  return build_transition_graph(model.projections, q, bursts, ap.window_s);
}

FlowStats flow_stats(const RunResult& run, int flow, const AnalysisParams& ap,
                     bool with_lyapunov) {
  if (flow < 0 || flow >= static_cast<int>(run.counters.size()))
    throw MissingTrace("no counters recorded for flow " + std::to_string(flow));
  const FlowCounters& c = run.counters[static_cast<std::size_t>(flow)];

  FlowStats st;
  st.flow = flow;
  st.duty = run.config.duty;
  st.sent = c.sent;
  st.delivered = c.delivered;
  st.dropped = c.dropped;
  st.throughput = throughput(c.sent, c.dropped);

  const PcaModel model = flow_pca(run, flow, ap);
  const QuantizationSpec q = fit_quantization(model.projections, ap.grid_bins);
  std::vector<std::pair<Micros, Micros>> bursts;
  if (run.config.perturbation)
    bursts = perturbation_window_list(run.config.duration_s, run.config.perturb_interval_s,
                                      run.config.perturb_burst_s);
  const StateGraph g = build_transition_graph(model.projections, q, bursts, ap.window_s);
  st.n_states = static_cast<int>(g.nodes.size());
  // Eigenvalues down at the numerical-noise floor of the leading one are
  // rank artifacts of a nearly constant series, not dimensions of the
  // dynamics; zero them before counting.
  std::vector<double> spectrum(model.eigenvalues.data(),
                               model.eigenvalues.data() + model.eigenvalues.size());
  const double lead = spectrum.empty() ? 0.0 : std::max(spectrum.front(), 0.0);
  for (double& l : spectrum)
    if (l < 1e-9 * lead) l = 0.0;
  try {
    st.n_dims_99 = dims_to_contribution(spectrum, ap.contribution);
  } catch (const AllZeroSpectrum&) {
    st.n_dims_99 = 0;  // constant series: no variance to explain
  }

  if (with_lyapunov) {
    const auto& f = run.cwnd[static_cast<std::size_t>(flow)];
    std::vector<double> series(f.begin(), f.end());
    EmbeddingSpec e;
    e.dim = ap.embed_dim;
    e.delay = ap.embed_delay;
    e.theiler = ap.theiler;
    e.fit_begin = ap.fit_begin;
    e.fit_count = ap.fit_count;
    e.max_refs = ap.max_refs;
    try {
      st.lyapunov = largest_lyapunov(series, run.sample_dt_s, e);
      st.lyapunov_valid = true;
    } catch (const SimError&) {
      st.lyapunov = std::nan("");
      st.lyapunov_valid = false;
    }
  }
  return st;
}

std::vector<FlowStats> run_stats(const RunResult& run, const AnalysisParams& ap,
                                 bool with_lyapunov) {
  std::vector<FlowStats> out;
  out.reserve(run.flows.size());
  for (const Flow& f : run.flows) out.push_back(flow_stats(run, f.id, ap, with_lyapunov));
  return out;
}

std::vector<double> settled_peaks(const std::vector<float>& series, double dt_s, double settle_s) {
  const std::size_t cut = static_cast<std::size_t>(
      std::min<double>(std::ceil(std::max(settle_s, 0.0) / dt_s), static_cast<double>(series.size())));
  if (series.size() - cut < 3) return {};
  std::vector<double> tail(series.begin() + static_cast<std::ptrdiff_t>(cut), series.end());
  return local_peaks(tail);
}

}  // namespace psn
