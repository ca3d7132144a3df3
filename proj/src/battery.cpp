#include "permlift/battery.hpp"

#include <numbers>

namespace permlift {

namespace {

Layout qr_layout(Elem n) { return Layout({{"q", n}, {"r", n}}); }

QuantumAdversary with_output(std::string name, Circuit c, std::size_t reg)
{
    return QuantumAdversary{std::move(name), std::move(c), {OutputPoint{{}, reg}}, {}};
}

std::function<bool(const Values&)> relation_phase(const Relation& r)
{
    return [r](const Values& v) { return r.pred({{0, v[0]}}, {v[1]}, 0); };
}

}

QuantumAdversary grover_fixed_point(Elem n, unsigned iterations)
{
    CircuitBuilder b(qr_layout(n), OracleWiring{});
    b.hadamard("q");
    for (unsigned i = 0; i < iterations; ++i) {
        b.slot(SlotKind::forward);
        b.controlled_phase([](const Values& v) { return v[0] == v[1]; }, std::numbers::pi);
        b.swap("q", "r");
        b.slot(SlotKind::backward);
        b.diffusion("q");
    }
    return with_output("grover-fixed-point-x" + std::to_string(iterations), b.build(), 0);
}

QuantumAdversary grover_relation(Elem n, const Relation& r, unsigned iterations)
{
    CircuitBuilder b(qr_layout(n), OracleWiring{});
    b.hadamard("q");
    for (unsigned i = 0; i < iterations; ++i) {
        b.slot(SlotKind::forward);
        b.controlled_phase(relation_phase(r), std::numbers::pi);
        b.slot(SlotKind::forward);
        b.diffusion("q");
    }
    return with_output("grover-" + r.name + "-x" + std::to_string(iterations), b.build(), 0);
}

QuantumAdversary grover_with_garbage(Elem n, const Relation& r)
{
    CircuitBuilder b(qr_layout(n), OracleWiring{});
    b.hadamard("q");
    b.slot(SlotKind::forward);
    b.controlled_phase(relation_phase(r), std::numbers::pi);
    b.diffusion("q");
    return with_output("grover-garbage-" + r.name, b.build(), 0);
}

QuantumAdversary query_and_output(Elem n, Elem x0)
{
    CircuitBuilder b(qr_layout(n), OracleWiring{});
    b.permute_basis([x0](Values& v) { v[0] ^= x0; });
    b.slot(SlotKind::forward);
    return with_output("query-output-" + std::to_string(x0), b.build(), 1);
}

QuantumAdversary backward_search(Elem n, unsigned low_zero_bits)
{
    const Elem lo = Elem(1) << low_zero_bits;
    if (n % lo != 0 || !is_power_of_two(n / lo))
        throw ParameterError("backward_search needs n = 2^a · 2^low_zero_bits");
    const Elem hi = n / lo;
    // H on the high part, identity on the low part.
    Matrix u = Matrix::Zero(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(hi));
    for (Elem a = 0; a < hi; ++a)
        for (Elem c = 0; c < hi; ++c)
            for (Elem l = 0; l < lo; ++l)
                u(a * lo + l, c * lo + l) = std::popcount(a & c) % 2 ? -s : s;
    CircuitBuilder b(qr_layout(n), OracleWiring{});
    b.register_unitary("q", u);
    b.slot(SlotKind::backward);
    return with_output("backward-search", b.build(), 1);
}

QuantumAdversary constant_output(Elem n, Elem x_out)
{
    CircuitBuilder b(Layout({{"q", n}, {"r", n}, {"o", n}}), OracleWiring{});
    b.permute_basis([x_out](Values& v) { v[2] ^= x_out; });
    b.hadamard("q");
    b.slot(SlotKind::forward);
    b.slot(SlotKind::backward);
    return with_output("constant-" + std::to_string(x_out), b.build(), 2);
}

std::vector<std::shared_ptr<const QuantumAdversary>> quantum_battery(Elem n)
{
    std::vector<std::shared_ptr<const QuantumAdversary>> out;
    out.push_back(std::make_shared<QuantumAdversary>(grover_fixed_point(n, 1)));
    out.push_back(std::make_shared<QuantumAdversary>(grover_relation(n, relation_successor(n), 1)));
    out.push_back(std::make_shared<QuantumAdversary>(grover_with_garbage(n, relation_fixed_point())));
    out.push_back(std::make_shared<QuantumAdversary>(query_and_output(n, 0)));
    out.push_back(std::make_shared<QuantumAdversary>(backward_search(n, 1)));
    out.push_back(std::make_shared<QuantumAdversary>(constant_output(n, 1)));
    return out;
}

namespace {

Outcome single(Elem x) { return Outcome{{Point{0, x}}, 0}; }

using Fn = FunctionAdversary::Body;

std::shared_ptr<const ClassicalAdversary> make(std::string name, std::size_t budget, std::uint64_t coins, Fn body)
{
    return std::make_shared<FunctionAdversary>(std::move(name), budget, coins, std::move(body));
}

Elem fwd(ClassicalOracle& o, Elem x) { return o.query({Direction::forward, {0, x}}); }
Elem bwd(ClassicalOracle& o, Elem y) { return o.query({Direction::backward, {0, y}}); }

}

std::shared_ptr<const ClassicalAdversary> classical_guess(Elem x0)
{
    return make("guess-" + std::to_string(x0), 0, 1, [x0](ClassicalOracle&, std::uint64_t) { return single(x0); });
}

std::shared_ptr<const ClassicalAdversary> classical_query_output(Elem x0)
{
    return make("query-output-" + std::to_string(x0), 1, 1,
                [x0](ClassicalOracle& o, std::uint64_t) { return single(fwd(o, x0)); });
}

std::shared_ptr<const ClassicalAdversary> classical_inverse_chase(Elem y0)
{
    return make("inverse-chase-" + std::to_string(y0), 1, 1,
                [y0](ClassicalOracle& o, std::uint64_t) { return single(bwd(o, y0)); });
}

std::shared_ptr<const ClassicalAdversary> classical_fixed_point_hunter()
{
    return make("fixed-point-hunter", 2, 1, [](ClassicalOracle& o, std::uint64_t) {
        if (fwd(o, 0) == 0)
            return single(0);
        if (fwd(o, 1) == 1)
            return single(1);
        return single(2);
    });
}

std::shared_ptr<const ClassicalAdversary> classical_double_sided_hunter(unsigned low_bits)
{
    const Elem mask = (Elem(1) << low_bits) - 1;
    return make("double-sided-hunter", 2, 1, [mask](ClassicalOracle& o, std::uint64_t) {
        const Elem x = bwd(o, 0);
        if ((x & mask) == 0)
            return single(x);
        return single(bwd(o, mask + 1));
    });
}

std::shared_ptr<const ClassicalAdversary> classical_random_guess(Elem n)
{
    return make("random-guess", 0, n,
                [n](ClassicalOracle&, std::uint64_t coins) { return single(static_cast<Elem>(coins % n)); });
}

std::shared_ptr<const ClassicalAdversary> classical_constant(Elem x_out)
{
    return make("constant-" + std::to_string(x_out), 2, 1, [x_out](ClassicalOracle& o, std::uint64_t) {
        fwd(o, 0);
        bwd(o, 0);
        return single(x_out);
    });
}

std::vector<std::shared_ptr<const ClassicalAdversary>> classical_battery(Elem n)
{
    return {classical_guess(0),        classical_query_output(0), classical_inverse_chase(0),
            classical_fixed_point_hunter(), classical_double_sided_hunter(1), classical_random_guess(n),
            classical_constant(1)};
}

std::vector<Relation> relation_battery(Elem n)
{
    std::vector<Relation> out{relation_fixed_point()};
    unsigned bits = 0;
    while ((Elem(1) << bits) < n)
        ++bits;
    if ((Elem(1) << bits) == n && bits >= 2 && bits % 2 == 0)
        out.push_back(relation_double_sided_zero(bits / 2));
    out.push_back(relation_successor(n));
    return out;
}

InteractiveQuantumAdversary oneway_inverter(Elem n)
{
    return {"oneway-inverter", [n](const Message& m) {
                const Elem y = m.at(0);
                CircuitBuilder b(qr_layout(n), OracleWiring{});
                b.permute_basis([y](Values& v) { v[0] ^= y; });
                b.slot(SlotKind::backward);
                return with_output("invert", b.build(), 1);
            }};
}

InteractiveQuantumAdversary oneway_forward_chase(Elem n)
{
    return {"oneway-forward-chase", [n](const Message& m) { return query_and_output(n, m.at(0)); }};
}

InteractiveQuantumAdversary non_interactive(std::shared_ptr<const QuantumAdversary> a)
{
    return {a->name, [a](const Message&) { return *a; }};
}

}
