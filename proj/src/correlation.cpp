#include "wmc/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "wmc/errors.hpp"
#include "wmc/parallel.hpp"

namespace wmc::correlation {

namespace {

std::size_t colour_bins(int n) {
    std::size_t bins = 1;
    for (int i = 0; i <= n; ++i) bins *= kColours;
    return bins;
}

void check_length(std::size_t n) {
    if (n < 1 || n > static_cast<std::size_t>(kMaxTupleLength))
        throw ValidationError(fmt::format("tuple length must be 1..{}, got {}", kMaxTupleLength, n));
}

void check_margin(const SchemeEmbedding& emb, const ColoredPatch& patch, std::span<const LatticePoint4> z) {
    const double need = required_margin(emb, z);
    if (patch.margin() < need)
        throw ValidationError(fmt::format(
            "patch margin {} is smaller than the longest difference vector ({}); counts would be biased by edge effects",
            patch.margin(), need));
}

double window_circumradius(const ConvexWindow& w) {
    if (w.dodecagon()) return w.dodecagon()->rho;
    return 0.5 * (w.max_corner() - w.min_corner()).norm();
}

}  // namespace

std::vector<int> residues_of(std::span<const LatticePoint4> z) {
    check_length(z.size());
    std::vector<int> r;
    r.reserve(z.size());
    for (const auto& v : z) r.push_back(cutproject::color_of(v));
    return r;
}

double required_margin(const SchemeEmbedding& emb, std::span<const LatticePoint4> z) {
    double m = 0.0;
    for (const auto& v : z) m = std::max(m, emb.physical_of(v).norm());
    return m;
}

std::vector<Vec2> internal_shifts(const SchemeEmbedding& emb, std::span<const LatticePoint4> z) {
    std::vector<Vec2> s;
    s.reserve(z.size());
    for (const auto& v : z) s.push_back(emb.internal_of(v));
    return s;
}

double area_term(const SchemeEmbedding& emb, const ConvexWindow& w, std::span<const LatticePoint4> z) {
    const auto shifts = internal_shifts(emb, z);
    return cutproject::window_intersection_area(w, shifts);
}

std::uint64_t PatternCounts::at(std::span<const int> colours) const {
    if (colours.size() != static_cast<std::size_t>(n) + 1)
        throw ValidationError(fmt::format("expected {} colours, got {}", n + 1, colours.size()));
    std::size_t index = 0;
    for (int k : colours) {
        if (k < 0 || k >= kColours) throw ValidationError(fmt::format("colour {} outside 0..5", k));
        index = index * kColours + static_cast<std::size_t>(k);
    }
    return by_colours[index];
}

PatternCounts count_patterns(const SchemeEmbedding& emb, const ColoredPatch& patch, std::span<const LatticePoint4> z,
                             unsigned threads) {
    check_length(z.size());
    for (const auto& v : z)
        if (!cutproject::lattice_contains(v)) throw ValidationError("difference vector " + v.str() + " is not a lattice point");
    check_margin(emb, patch, z);
    const int n = static_cast<int>(z.size());
    const auto& points = patch.points();
    const std::size_t chunks = chunk_count(points.size(), threads);
    std::vector<std::vector<std::uint64_t>> hist(chunks, std::vector<std::uint64_t>(colour_bins(n), 0));
    std::vector<std::uint64_t> base(chunks, 0), matched(chunks, 0);

    parallel_chunks(points.size(), threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& x = points[i];
            if (!patch.in_core(x)) continue;
            ++base[chunk];
            std::size_t index = static_cast<std::size_t>(x.colour);
            bool complete = true;
            for (const auto& v : z) {
                const auto* y = patch.find(x.lattice + v);
                if (!y) {
                    complete = false;
                    break;
                }
                index = index * kColours + static_cast<std::size_t>(y->colour);
            }
            if (!complete) continue;
            ++matched[chunk];
            ++hist[chunk][index];
        }
    });

    PatternCounts out;
    out.n = n;
    out.by_colours.assign(colour_bins(n), 0);
    for (std::size_t c = 0; c < chunks; ++c) {
        out.base_points += base[c];
        out.matches += matched[c];
        for (std::size_t b = 0; b < out.by_colours.size(); ++b) out.by_colours[b] += hist[c][b];
    }
    return out;
}

std::uint64_t uncoloured_pattern_count(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                       std::span<const LatticePoint4> z) {
    check_margin(emb, patch, z);
    std::uint64_t count = 0;
    for (const auto& x : patch.points()) {
        if (!patch.in_core(x)) continue;
        if (std::all_of(z.begin(), z.end(), [&](const auto& v) { return patch.find(x.lattice + v) != nullptr; }))
            ++count;
    }
    return count;
}

Estimate empirical_colored_frequency(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                     std::span<const LatticePoint4> z, std::span<const int> colours) {
    const PatternCounts counts = count_patterns(emb, patch, z);
    const std::uint64_t k = counts.at(colours);
    const double area = patch.core_area();
    return {static_cast<double>(k) / area, std::sqrt(static_cast<double>(k)) / area, k};
}

double analytic_colored_frequency(const SchemeEmbedding& emb, const ConvexWindow& w,
                                  const cyclic::CyclicWeighting& weighting, std::span<const LatticePoint4> z,
                                  std::span<const int> colours) {
    weighting.validate();
    if (weighting.N != kColours)
        throw ValidationError(fmt::format("the colour homomorphism maps onto Z/6Z; weighting has N = {}", weighting.N));
    const auto r = residues_of(z);
    if (colours.size() != z.size() + 1)
        throw ValidationError(fmt::format("expected {} colours, got {}", z.size() + 1, colours.size()));
    const int m = static_cast<int>(weighting.windows.size());
    for (int k : colours)
        if (k < 0 || k >= m) throw ValidationError(fmt::format("colour index {} outside 0..{}", k, m - 1));

    auto member = [&](int window, int residue) {
        const auto& a = weighting.windows[window];
        return std::find(a.begin(), a.end(), ((residue % kColours) + kColours) % kColours) != a.end();
    };
    int card = 0;
    for (int s = 0; s < kColours; ++s) {
        bool ok = member(colours[0], s);
        for (std::size_t j = 0; ok && j < r.size(); ++j) ok = member(colours[j + 1], s + r[j]);
        if (ok) ++card;
    }
    if (card == 0) return 0.0;
    return area_term(emb, w, z) * card / static_cast<double>(kColours);
}

Estimate empirical_coefficient(const PatternCounts& counts, const cyclic::CoefficientVector& c, double core_area) {
    if (c.N != kColours) throw ValidationError(fmt::format("coefficient vector must have N = 6, got {}", c.N));
    Rational total = 0;
    double variance = 0.0;
    for (std::size_t index = 0; index < counts.by_colours.size(); ++index) {
        const std::uint64_t k = counts.by_colours[index];
        if (k == 0) continue;
        std::size_t rest = index;
        Rational weight = 1;
        for (int j = counts.n; j >= 0; --j) {
            weight *= c.c[rest % kColours];
            rest /= kColours;
        }
        total += weight * static_cast<unsigned long>(k);
        const double wd = weight.get_d();
        variance += static_cast<double>(k) * wd * wd;
    }
    return {total.get_d() / core_area, std::sqrt(variance) / core_area, counts.matches};
}

Estimate empirical_coefficient(const SchemeEmbedding& emb, const ColoredPatch& patch,
                               const cyclic::CoefficientVector& c, std::span<const LatticePoint4> z) {
    return empirical_coefficient(count_patterns(emb, patch, z), c, patch.core_area());
}

double analytic_coefficient(const SchemeEmbedding& emb, const ConvexWindow& w, const cyclic::CoefficientVector& c,
                            std::span<const LatticePoint4> z) {
    if (c.N != kColours) throw ValidationError(fmt::format("coefficient vector must have N = 6, got {}", c.N));
    const auto r = residues_of(z);
    const Rational m = cyclic::pattern_frequency(c, r);
    if (m == 0) return 0.0;
    return area_term(emb, w, z) * m.get_d() / kColours;
}

std::vector<LatticePoint4> small_difference_vectors(const SchemeEmbedding& emb, const ColoredPatch& patch) {
    const double radius = window_circumradius(patch.window());
    const auto disc = ConvexWindow::regular_dodecagon(radius, Vec2::Zero());
    auto found = cutproject::enumerate_lattice(emb, disc, patch.margin(), false, 1);
    std::vector<LatticePoint4> out;
    for (const auto& v : found)
        if (v != LatticePoint4{} && emb.physical_of(v).norm() <= patch.margin()) out.push_back(v);
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return emb.internal_of(a).norm() < emb.internal_of(b).norm();
    });
    return out;
}

std::optional<std::vector<int>> best_witness_residues(const cyclic::CoefficientVector& a,
                                                      const cyclic::CoefficientVector& b, int n) {
    if (a.N != b.N) throw ValidationError("weightings have different N");
    const int N = a.N;
    const auto cmp = cyclic::compare_weightings(a, b, n);
    std::optional<std::vector<int>> best;
    Rational best_score = -1;
    for (const auto& w : cmp.witnesses) {
        Rational sum = 0, squares = 0;
        for (int k = 0; k < N; ++k) {
            Rational pa = a.c[k], pb = b.c[k];
            for (int r : w.tuple) {
                pa *= a.c[(k + r) % N];
                pb *= b.c[(k + r) % N];
            }
            const Rational d = pa - pb;
            sum += d;
            squares += d * d;
        }
        if (squares == 0) continue;
        const Rational score = sum * sum / squares;
        if (score > best_score) {
            best_score = score;
            best = w.tuple;
        }
    }
    return best;
}

DistinguishingTuple find_distinguishing_tuple(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                              std::span<const int> residues, const cyclic::CoefficientVector& a,
                                              const cyclic::CoefficientVector& b, bool distinct) {
    check_length(residues.size());
    DistinguishingTuple out;
    out.residues.assign(residues.begin(), residues.end());
    for (int& r : out.residues) r = ((r % kColours) + kColours) % kColours;

    // Up to kPerResidue candidates per colour, smallest internal norm first.
    constexpr std::size_t kPerResidue = 8;
    std::array<std::vector<LatticePoint4>, kColours> pool;
    pool[0].push_back(LatticePoint4{});
    for (const auto& v : small_difference_vectors(emb, patch)) {
        auto& bucket = pool[cutproject::color_of(v)];
        if (bucket.size() < kPerResidue) bucket.push_back(v);
    }

    const ConvexWindow& w = patch.window();
    const std::size_t n = out.residues.size();
    std::vector<Vec2> shifts(n);
    std::vector<LatticePoint4> current(n), best;
    double best_area = -1.0;

    // Exhaustive over the candidate pools; joint area is monotone under
    // adding shifts, so prune partial tuples that cannot beat the best.
    auto search = [&](auto&& self, std::size_t depth, double area_so_far) -> void {
        if (area_so_far <= best_area) return;
        if (depth == n) {
            best_area = area_so_far;
            best = current;
            return;
        }
        for (const auto& v : pool[out.residues[depth]]) {
            const auto used_end = current.begin() + static_cast<long>(depth);
            if (distinct && std::find(current.begin(), used_end, v) != used_end) continue;
            current[depth] = v;
            shifts[depth] = emb.internal_of(v);
            const double area =
                cutproject::window_intersection_area(w, std::span<const Vec2>(shifts.data(), depth + 1));
            self(self, depth + 1, area);
        }
    };
    search(search, 0, w.area());

    if (best.empty()) {
        out.warning = "no candidate vectors for the requested residues within the patch margin";
        return out;
    }
    out.z = best;
    out.area = best_area;
    out.area_fraction = best_area / w.area();
    out.meets_floor = out.area_fraction >= kAreaFloor;
    if (!out.meets_floor)
        out.warning = fmt::format("best joint area is {:.3f} of the window, below the {:.2f} floor",
                                  out.area_fraction, kAreaFloor);
    out.m_a = cyclic::pattern_frequency(a, out.residues);
    out.m_b = cyclic::pattern_frequency(b, out.residues);
    out.coefficient_a = out.area * out.m_a.get_d() / kColours;
    out.coefficient_b = out.area * out.m_b.get_d() / kColours;
    return out;
}

std::vector<std::vector<LatticePoint4>> random_small_tuples(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                                            int n, int count, std::uint64_t seed) {
    check_length(static_cast<std::size_t>(n));
    auto candidates = small_difference_vectors(emb, patch);
    if (candidates.size() > 48) candidates.resize(48);
    if (candidates.size() < static_cast<std::size_t>(n))
        throw ValidationError("patch margin too small to draw difference vectors");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const double floor = kAreaFloor * patch.window().area();
    std::vector<std::vector<LatticePoint4>> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
        if (attempt > 1000 * count) throw ValidationError("could not draw tuples with a usable joint area term");
        std::vector<LatticePoint4> z;
        while (z.size() < static_cast<std::size_t>(n)) {
            const auto& v = candidates[pick(rng)];
            if (std::find(z.begin(), z.end(), v) == z.end()) z.push_back(v);
        }
        if (area_term(emb, patch.window(), z) >= floor) out.push_back(std::move(z));
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Agree: return "agree";
        case Verdict::Separate: return "separate";
        case Verdict::Inconclusive: return "inconclusive";
        default: return "insufficient statistics";
    }
}

bool CorrelationReport::all_agree_up_to(int n) const {
    bool any = false;
    for (const auto& r : records) {
        if (r.n > n) continue;
        any = true;
        if (r.verdict != Verdict::Agree) return false;
    }
    return any;
}

bool CorrelationReport::any_separate_at(int n) const {
    return std::any_of(records.begin(), records.end(),
                       [&](const auto& r) { return r.n == n && r.verdict == Verdict::Separate; });
}

CorrelationReport correlation_compare(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                      const cyclic::CoefficientVector& a, const cyclic::CoefficientVector& b,
                                      const std::vector<std::vector<LatticePoint4>>& tuples, int n_min, int n_max,
                                      unsigned threads) {
    if (a.N != kColours || b.N != kColours) throw ValidationError("both weightings must have N = 6");
    if (n_min < 1 || n_max > kMaxTupleLength || n_min > n_max)
        throw ValidationError(fmt::format("invalid n range {}..{}", n_min, n_max));
    CorrelationReport rep;
    rep.R = patch.radius();
    rep.margin = patch.margin();
    rep.base_points = patch.core_count();
    rep.density = static_cast<double>(rep.base_points) / patch.core_area();
    rep.window_area = patch.window().area();
    rep.kappa = rep.density / (2.0 * rep.window_area);

    for (const auto& tuple : tuples) {
        for (int n = n_min; n <= std::min<int>(n_max, static_cast<int>(tuple.size())); ++n) {
            CorrelationRecord rec;
            rec.n = n;
            rec.z.assign(tuple.begin(), tuple.begin() + n);
            rec.residues = residues_of(rec.z);
            rec.area = area_term(emb, patch.window(), rec.z);
            rec.m_a = cyclic::pattern_frequency(a, rec.residues);
            rec.m_b = cyclic::pattern_frequency(b, rec.residues);
            rec.analytic_a = rec.area * rec.m_a.get_d() / kColours;
            rec.analytic_b = rec.area * rec.m_b.get_d() / kColours;
            rec.analytic_gap = rec.area * Rational(rec.m_a - rec.m_b).get_d() / kColours;

            const PatternCounts counts = count_patterns(emb, patch, rec.z, threads);
            rec.matches = counts.matches;
            rec.empirical_a = empirical_coefficient(counts, a, patch.core_area());
            rec.empirical_b = empirical_coefficient(counts, b, patch.core_area());
            rec.gap = rec.empirical_a.value - rec.empirical_b.value;
            // Per-base-point difference of weight products, summed in quadrature.
            double variance = 0.0;
            for (std::size_t index = 0; index < counts.by_colours.size(); ++index) {
                const std::uint64_t k = counts.by_colours[index];
                if (k == 0) continue;
                std::size_t rest = index;
                Rational pa = 1, pb = 1;
                for (int j = n; j >= 0; --j) {
                    pa *= a.c[rest % kColours];
                    pb *= b.c[rest % kColours];
                    rest /= kColours;
                }
                const double d = Rational(pa - pb).get_d();
                variance += static_cast<double>(k) * d * d;
            }
            rec.gap_sigma = std::sqrt(variance) / patch.core_area();

            rec.predicted_a = 2.0 * rep.kappa * rec.analytic_a;
            rec.predicted_b = 2.0 * rep.kappa * rec.analytic_b;
            rec.discrepancy_a = rec.predicted_a != 0.0 ? (rec.empirical_a.value - rec.predicted_a) / rec.predicted_a : 0.0;
            rec.discrepancy_b = rec.predicted_b != 0.0 ? (rec.empirical_b.value - rec.predicted_b) / rec.predicted_b : 0.0;

            const double gap = std::abs(rec.gap);
            if (rec.matches < kMinMatches)
                rec.verdict = Verdict::Insufficient;
            else if (gap <= kAgreeSigmas * rec.gap_sigma)
                rec.verdict = Verdict::Agree;
            else if (gap > kSeparateSigmas * rec.gap_sigma)
                rec.verdict = Verdict::Separate;
            else
                rec.verdict = Verdict::Inconclusive;
            rep.records.push_back(std::move(rec));
        }
    }
    return rep;
}

std::string CorrelationReport::table() const {
    std::ostringstream os;
    os << fmt::format("R={} margin={} base_points={} density={:.6f} area(W)={:.6f} kappa={:.6f}\n", R, margin,
                      base_points, density, window_area, kappa);
    os << fmt::format("{:>2} {:>16} {:>8} {:>14} {:>14} {:>14} {:>14} {:>12} {:>10}  {}\n", "n", "residues", "area",
                      "analytic_A", "analytic_B", "empirical_A", "empirical_B", "gap/sigma", "matches", "verdict");
    for (const auto& r : records) {
        std::string res;
        for (std::size_t i = 0; i < r.residues.size(); ++i) res += (i ? "," : "") + std::to_string(r.residues[i]);
        const double ratio = r.gap_sigma > 0 ? r.gap / r.gap_sigma : 0.0;
        os << fmt::format("{:>2} {:>16} {:>8.4f} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g} {:>12.3f} {:>10}  {}\n", r.n,
                          res, r.area, r.analytic_a, r.analytic_b, r.empirical_a.value, r.empirical_b.value, ratio,
                          r.matches, to_string(r.verdict));
    }
    return os.str();
}

}  // namespace wmc::correlation
