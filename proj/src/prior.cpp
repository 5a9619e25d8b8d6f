#include "qest/prior.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qest {

namespace {

Quadrature compute_gauss_legendre(int n) {
    // Newton iteration on P_n with the three-term recurrence; standard
    // symmetric construction, accurate to machine precision for n < ~200.
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) q.nodes[n / 2] = 0.0;
    return q;
}

std::map<int, Quadrature> g_cache;
std::mutex g_cache_mutex;

} // namespace

const Quadrature& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(n);
    if (it == g_cache.end()) it = g_cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

Prior Prior::uniform(double lower, double upper, int nodes) {
    if (!(lower < upper)) throw std::invalid_argument("Prior::uniform: need lower < upper");
    Prior p;
    p.lower = lower;
    p.upper = upper;
    const double density = 1.0 / (upper - lower);
    p.weight = [density](double) { return density; };
    p.quadrature_nodes = nodes;
    return p;
}

void Prior::validate() const {
    if (!(lower < upper)) throw std::invalid_argument("Prior: need lower < upper");
    if (!weight) throw std::invalid_argument("Prior: missing weight function");
    const Quadrature& q = gauss_legendre(quadrature_nodes);
    const double half = 0.5 * (upper - lower), mid = 0.5 * (upper + lower);
    double total = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double s = mid + half * q.nodes[i];
        const double w = weight(s);
        if (w < 0.0) throw std::invalid_argument("Prior: negative density");
        total += half * q.weights[i] * w;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("Prior: density does not integrate to 1");
}

double integrate(const Prior& prior, const std::function<double(double)>& f) {
    const Quadrature& q = gauss_legendre(prior.quadrature_nodes);
    const double half = 0.5 * (prior.upper - prior.lower);
    const double mid = 0.5 * (prior.upper + prior.lower);
    double total = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        const double s = mid + half * q.nodes[i];
        total += half * q.weights[i] * f(s);
    }
    return total;
}

} // namespace qest
