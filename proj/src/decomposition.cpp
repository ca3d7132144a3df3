#include "permlift/decomposition.hpp"

#include <numeric>

namespace permlift {

namespace {

std::vector<std::size_t> query_regs(const Circuit& c)
{
    std::vector<std::size_t> r;
    if (c.wiring.key)
        r.push_back(*c.wiring.key);
    r.push_back(c.wiring.query);
    return r;
}

Values point_values(const Circuit& c, Key key, Elem v)
{
    if (c.wiring.key)
        return {key, v};
    return {v};
}

}

template <class T>
std::vector<Component> decompose_state(const Circuit& c, const T& pi, const T& pi_star, const std::vector<Point>& xs)
{
    if (!c.is_normal_form())
        throw PreconditionError("decomposition takes normal-form circuits");
    if (!table_in_G(pi, pi_star, xs))
        throw PreconditionError("table pair is not good for the target points");
    check_wiring(c.layout, c.wiring, table_size(pi), table_keys(pi));
    const auto hm = table_hit_miss(pi, pi_star, xs);
    const std::size_t Q = c.slot_count();
    const auto regs = query_regs(c);

    std::vector<Component> out;
    for (auto& ch : enumerate_sim_choices(Q, xs.size(), true)) {
        std::vector<T> oracles;
        std::vector<std::optional<Projector>> proj(Q);
        for (std::size_t i = 1; i <= Q; ++i) {
            std::vector<std::size_t> J;
            for (std::size_t j = 0; j < xs.size(); ++j) {
                if (ch.v[j] == kBot)
                    continue;
                const auto vj = static_cast<std::size_t>(ch.v[j]);
                if (vj < i || (vj == i && ch.c[j] == 0))
                    J.push_back(j);
            }
            oracles.push_back(table_reprogram_targets(pi, pi_star, xs, J));
            const int j = ch.fired_at(i);
            if (j >= 0) {
                const auto& h = hm[j];
                const bool fwd = c.direction(i) == Direction::forward;
                const Elem v = fwd ? (ch.b[j] == 0 ? h.x_hit : h.x_miss) : (ch.b[j] == 0 ? h.y_hit : h.y_miss);
                proj[i - 1] = Projector{regs, {point_values(c, h.key, v)}};
            }
        }
        StateVector s = run_with_insertions(c, oracles, proj);
        const int sign = ch.sign();
        out.push_back({std::move(ch), sign, std::move(s)});
    }
    return out;
}

template <class T>
DecompositionCheck check_decomposition(const Circuit& c, const T& pi, const T& pi_star, const std::vector<Point>& xs)
{
    const auto comps = decompose_state(c, pi, pi_star, xs);
    std::vector<std::size_t> all(xs.size());
    std::iota(all.begin(), all.end(), 0);
    const StateVector target = run_circuit(c, table_reprogram_targets(pi, pi_star, xs, all));
    Amplitudes sum = Amplitudes::Zero(static_cast<Eigen::Index>(c.layout.dim()));
    for (const auto& comp : comps)
        sum += static_cast<double>(comp.sign) * comp.state.amps();
    return {comps.size(), (sum - target.amps()).norm()};
}

template std::vector<Component> decompose_state(const Circuit&, const Permutation&, const Permutation&,
                                                const std::vector<Point>&);
template std::vector<Component> decompose_state(const Circuit&, const Cipher&, const Cipher&, const std::vector<Point>&);
template DecompositionCheck check_decomposition(const Circuit&, const Permutation&, const Permutation&,
                                                const std::vector<Point>&);
template DecompositionCheck check_decomposition(const Circuit&, const Cipher&, const Cipher&, const std::vector<Point>&);

}
