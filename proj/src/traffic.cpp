#include "icnsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "icnsim/hashing.hpp"

namespace icnsim {

namespace {

void check_zm_params(double alpha, double q, std::uint32_t n_p) {
    if (n_p < 1)
        throw ValidationError("zipf-mandelbrot: population must be >= 1");
    if (!(alpha > 0.0))
        throw ValidationError("zipf-mandelbrot: alpha must be > 0");
    if (!(q >= 0.0))
        throw ValidationError("zipf-mandelbrot: q must be >= 0");
}

std::vector<double> zm_weights(double alpha, double q, std::uint32_t n_p) {
    std::vector<double> w(n_p);
    for (std::uint32_t k = 1; k <= n_p; ++k)
        w[k - 1] = std::pow(static_cast<double>(k) + q, -alpha);
    return w;
}

} // namespace

double zm_pmf(std::uint32_t k, double alpha, double q, std::uint32_t n_p) {
    check_zm_params(alpha, q, n_p);
    if (k < 1 || k > n_p)
        throw ValidationError("zm_pmf: rank " + std::to_string(k) + " outside [1, " +
                              std::to_string(n_p) + "]");
    auto w = zm_weights(alpha, q, n_p);
    double norm = std::accumulate(w.begin(), w.end(), 0.0);
    return w[k - 1] / norm;
}

ZmSampler::ZmSampler(std::uint32_t n_p, double alpha, double q, std::uint64_t sample_seed,
                     std::uint64_t permutation_seed)
    : n_p_(n_p), alpha_(alpha), q_(q), rng_(sample_seed) {
    check_zm_params(alpha, q, n_p);
    auto w = zm_weights(alpha, q, n_p);
    double norm = std::accumulate(w.begin(), w.end(), 0.0);
    cdf_.resize(n_p);
    double acc = 0.0;
    for (std::uint32_t i = 0; i < n_p; ++i) {
        acc += w[i] / norm;
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
    rank_to_id_.resize(n_p);
    std::iota(rank_to_id_.begin(), rank_to_id_.end(), 0u);
    Rng perm(permutation_seed);
    perm.shuffle(rank_to_id_);
}

std::uint32_t ZmSampler::sample_rank() {
    double u = rng_.uniform01();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end())
        --it;
    return static_cast<std::uint32_t>(it - cdf_.begin()) + 1;
}

ObjectId ZmSampler::sample() { return rank_to_id_[sample_rank() - 1]; }

ObjectId ZmSampler::id_for_rank(std::uint32_t rank) const {
    if (rank < 1 || rank > n_p_)
        throw ValidationError("rank out of range");
    return rank_to_id_[rank - 1];
}

WorkloadGenerator::WorkloadGenerator(std::uint64_t n_requests, std::vector<RouterId> sources,
                                     ZmSampler sampler, std::uint64_t source_seed)
    : n_requests_(n_requests), sources_(std::move(sources)), sampler_(std::move(sampler)),
      source_rng_(source_seed) {
    if (sources_.empty())
        throw ValidationError("workload needs at least one source router");
    std::sort(sources_.begin(), sources_.end());
}

std::optional<RequestEvent> WorkloadGenerator::next() {
    if (emitted_ >= n_requests_)
        return std::nullopt;
    RequestEvent ev;
    ev.seq = emitted_++;
    ev.source_router = sources_[source_rng_.below(sources_.size())];
    ev.object = sampler_.sample();
    return ev;
}

std::vector<RequestEvent> WorkloadGenerator::materialize(WorkloadGenerator gen) {
    std::vector<RequestEvent> out;
    out.reserve(gen.total());
    while (auto ev = gen.next())
        out.push_back(*ev);
    return out;
}

std::string trace_to_csv(std::span<const RequestEvent> trace) {
    std::ostringstream out;
    out << "seq,source_router,object_id\n";
    for (const auto& ev : trace)
        out << ev.seq << "," << ev.source_router << "," << ev.object << "\n";
    return out.str();
}

std::vector<RequestEvent> trace_from_csv(std::istream& in) {
    std::vector<RequestEvent> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line_no == 1) {
            if (line != "seq,source_router,object_id")
                throw ParseError("trace: unexpected header '" + line + "'");
            continue;
        }
        RequestEvent ev;
        char c1, c2;
        std::istringstream ss(line);
        if (!(ss >> ev.seq >> c1 >> ev.source_router >> c2 >> ev.object) || c1 != ',' || c2 != ',')
            throw ParseError("trace line " + std::to_string(line_no) + ": bad row '" + line + "'");
        out.push_back(ev);
    }
    return out;
}

std::vector<RequestEvent> trace_from_csv_text(const std::string& text) {
    std::istringstream ss(text);
    return trace_from_csv(ss);
}

std::uint64_t trace_hash(std::span<const RequestEvent> trace) {
    return fnv1a64(trace_to_csv(trace));
}

PersistenceResult classify_persistence(std::span<const RequestEvent> trace, ObjectId object,
                                       std::uint64_t tau) {
    if (tau == 0)
        throw ValidationError("persistence threshold tau must be > 0");
    std::uint64_t prev = 0;
    bool have_prev = false;
    for (const auto& ev : trace) {
        if (ev.object != object)
            continue;
        if (have_prev && ev.seq - prev < tau)
            return {true, prev};
        prev = ev.seq;
        have_prev = true;
    }
    return {false, 0};
}

} // namespace icnsim
