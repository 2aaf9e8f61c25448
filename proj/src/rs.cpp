#include "dnastore/rs.hpp"

#include <array>
#include <stdexcept>

namespace dna::rs {
namespace {

struct Gf256 {
    std::array<std::uint8_t, 512> exp{};  // doubled to avoid mod in mul
    std::array<std::uint8_t, 256> log{};

    constexpr Gf256() {
        int x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x100) x ^= 0x11D;
        }
        for (int i = 255; i < 512; ++i) exp[i] = exp[i - 255];
        log[0] = 0;  // unused; mul guards zero operands
    }

    constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp[log[a] + log[b]];
    }
    constexpr std::uint8_t div(std::uint8_t a, std::uint8_t b) const {
        if (a == 0) return 0;
        return exp[(log[a] + 255 - log[b]) % 255];
    }
    constexpr std::uint8_t pow_alpha(int e) const {
        e %= 255;
        if (e < 0) e += 255;
        return exp[e];
    }
    constexpr std::uint8_t inv(std::uint8_t a) const { return exp[255 - log[a]]; }
};

constexpr Gf256 gf{};

// Generator polynomial g(x) = prod_{i=0..15} (x - alpha^i), low degree first.
struct GenPoly {
    std::array<std::uint8_t, kParityBytes + 1> coef{};
    constexpr GenPoly() {
        coef[0] = 1;
        int deg = 0;
        for (int i = 0; i < kParityBytes; ++i) {
            const std::uint8_t root = gf.pow_alpha(i);
            // multiply by (x + root)  (characteristic 2: minus == plus)
            coef[deg + 1] = 0;
            for (int j = deg + 1; j >= 1; --j)
                coef[j] = static_cast<std::uint8_t>(coef[j - 1] ^ gf.mul(coef[j], root));
            coef[0] = gf.mul(coef[0], root);
            ++deg;
        }
    }
};

constexpr GenPoly gen{};

}  // namespace

std::vector<std::uint8_t> encode(std::span<const std::uint8_t> chunk) {
    if (chunk.empty() || chunk.size() > kMaxData)
        throw std::domain_error("rs::encode: chunk size must be in [1, 239]");
    // Polynomial long division of data * x^16 by g(x); remainder is parity.
    std::vector<std::uint8_t> out(chunk.begin(), chunk.end());
    out.resize(chunk.size() + kParityBytes, 0);
    std::array<std::uint8_t, kParityBytes> rem{};
    for (std::uint8_t byte : chunk) {
        const std::uint8_t factor = static_cast<std::uint8_t>(byte ^ rem[0]);
        for (int i = 0; i < kParityBytes - 1; ++i)
            rem[i] = static_cast<std::uint8_t>(
                rem[i + 1] ^ gf.mul(factor, gen.coef[kParityBytes - 1 - i]));
        rem[kParityBytes - 1] = gf.mul(factor, gen.coef[0]);
    }
    for (int i = 0; i < kParityBytes; ++i) out[chunk.size() + i] = rem[i];
    return out;
}

DecodeResult decode(std::span<const std::uint8_t> word) {
    if (word.size() < kParityBytes + 1 || word.size() > kBlock)
        throw std::domain_error("rs::decode: word size must be in [17, 255]");
    const int n = static_cast<int>(word.size());

    // Syndromes S_j = r(alpha^j), r as polynomial with word[0] the highest
    // coefficient.
    std::array<std::uint8_t, kParityBytes> synd{};
    bool all_zero = true;
    for (int j = 0; j < kParityBytes; ++j) {
        std::uint8_t s = 0;
        const std::uint8_t a = gf.pow_alpha(j);
        for (int i = 0; i < n; ++i) s = static_cast<std::uint8_t>(gf.mul(s, a) ^ word[i]);
        synd[j] = s;
        if (s) all_zero = false;
    }

    DecodeResult res;
    if (all_zero) {
        res.ok = true;
        res.data.assign(word.begin(), word.end() - kParityBytes);
        return res;
    }

    // Berlekamp-Massey for the error locator Lambda.
    std::vector<std::uint8_t> lambda{1}, b{1};
    int L = 0, m = 1;
    std::uint8_t bb = 1;
    for (int nstep = 0; nstep < kParityBytes; ++nstep) {
        std::uint8_t delta = synd[nstep];
        for (int i = 1; i <= L; ++i)
            if (i < static_cast<int>(lambda.size()))
                delta = static_cast<std::uint8_t>(delta ^ gf.mul(lambda[i], synd[nstep - i]));
        if (delta == 0) {
            ++m;
        } else if (2 * L <= nstep) {
            std::vector<std::uint8_t> t = lambda;
            const std::uint8_t coef = gf.div(delta, bb);
            if (lambda.size() < b.size() + m) lambda.resize(b.size() + m, 0);
            for (std::size_t i = 0; i < b.size(); ++i)
                lambda[i + m] = static_cast<std::uint8_t>(lambda[i + m] ^ gf.mul(coef, b[i]));
            L = nstep + 1 - L;
            b = std::move(t);
            bb = delta;
            m = 1;
        } else {
            const std::uint8_t coef = gf.div(delta, bb);
            if (lambda.size() < b.size() + m) lambda.resize(b.size() + m, 0);
            for (std::size_t i = 0; i < b.size(); ++i)
                lambda[i + m] = static_cast<std::uint8_t>(lambda[i + m] ^ gf.mul(coef, b[i]));
            ++m;
        }
    }
    while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
    const int nerr = static_cast<int>(lambda.size()) - 1;
    if (nerr > kMaxCorrectable || nerr != L) return res;  // uncorrectable

    // Chien search: positions with Lambda(alpha^{-e}) == 0, e = n-1-pos.
    std::vector<int> err_pos;
    std::vector<std::uint8_t> err_exp;  // alpha^e per error, e as above
    for (int e = 0; e < n; ++e) {
        std::uint8_t v = 0;
        const std::uint8_t x = gf.pow_alpha(-e);  // alpha^{-e}
        for (int i = nerr; i >= 0; --i) v = static_cast<std::uint8_t>(gf.mul(v, x) ^ lambda[i]);
        if (v == 0) {
            err_pos.push_back(n - 1 - e);
            err_exp.push_back(gf.pow_alpha(e));
        }
    }
    if (static_cast<int>(err_pos.size()) != nerr) return res;

    // Forney with first root alpha^0: Omega = S * Lambda mod x^16,
    // e_k = X_k * Omega(X_k^{-1}) / Lambda'(X_k^{-1}).
    std::vector<std::uint8_t> omega(kParityBytes, 0);
    for (int i = 0; i < kParityBytes; ++i) {
        std::uint8_t acc = 0;
        for (int j = 0; j <= i; ++j)
            if (j < static_cast<int>(lambda.size()))
                acc = static_cast<std::uint8_t>(acc ^ gf.mul(lambda[j], synd[i - j]));
        omega[i] = acc;
    }

    std::vector<std::uint8_t> fixed(word.begin(), word.end());
    for (std::size_t k = 0; k < err_pos.size(); ++k) {
        const std::uint8_t xk = err_exp[k];
        const std::uint8_t xinv = gf.inv(xk);
        std::uint8_t om = 0;
        for (int i = kParityBytes - 1; i >= 0; --i)
            om = static_cast<std::uint8_t>(gf.mul(om, xinv) ^ omega[i]);
        // Lambda'(x): odd-degree terms only
        std::uint8_t dl = 0;
        for (std::size_t i = 1; i < lambda.size(); i += 2) {
            std::uint8_t term = lambda[i];
            // multiply by xinv^{i-1}
            for (std::size_t p = 1; p < i; ++p) term = gf.mul(term, xinv);
            dl = static_cast<std::uint8_t>(dl ^ term);
        }
        if (dl == 0) return res;
        const std::uint8_t mag = gf.mul(xk, gf.div(om, dl));
        fixed[err_pos[k]] = static_cast<std::uint8_t>(fixed[err_pos[k]] ^ mag);
    }

    // Verify: recomputed syndromes must vanish.
    for (int j = 0; j < kParityBytes; ++j) {
        std::uint8_t s = 0;
        const std::uint8_t a = gf.pow_alpha(j);
        for (int i = 0; i < n; ++i) s = static_cast<std::uint8_t>(gf.mul(s, a) ^ fixed[i]);
        if (s) return res;
    }

    res.ok = true;
    res.corrected = nerr;
    res.data.assign(fixed.begin(), fixed.end() - kParityBytes);
    return res;
}

}  // namespace dna::rs
