#include "primsum/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace primsum {

namespace {

std::array<uint32_t, 256> make_crc_table() {
    std::array<uint32_t, 256> table{};
    for (uint32_t i = 0; i < 256; ++i) {
        uint32_t v = i;
        for (int b = 0; b < 8; ++b) v = (v >> 1) ^ (0xEDB88320u & (~(v & 1) + 1));
        table[i] = v;
    }
    return table;
}

const std::array<uint32_t, 256>& crc_table() {
    static const std::array<uint32_t, 256> table = make_crc_table();
    return table;
}

}  // namespace

void Crc32::update(const void* data, size_t size) {
    const uint8_t* bytes = static_cast<const uint8_t*>(data);
    const auto& table = crc_table();
    for (size_t i = 0; i < size; ++i)
        state_ = (state_ >> 8) ^ table[(state_ ^ bytes[i]) & 0xFF];
}

void Crc32::update_byte(uint8_t b) { update(&b, 1); }

void Crc32::update_u64le(uint64_t v) {
    uint8_t bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = uint8_t(v >> (8 * i));
    update(bytes, 8);
}

uint32_t crc32_bytes(std::span<const uint8_t> data) {
    Crc32 crc;
    crc.update(data.data(), data.size());
    return crc.value();
}

uint32_t unit_crc(std::span<const COutcome> outcomes) {
    Crc32 crc;
    for (const COutcome& oc : outcomes) {
        crc.update_u64le(oc.c);
        crc.update_u64le(oc.success ? oc.m_terminal : 0);
        crc.update_byte(oc.success ? 0x01 : 0x00);
    }
    return crc.value();
}

std::string WorkUnit::id() const {
    std::ostringstream os;
    if (kind == UnitKind::c_range)
        os << "c:" << c_lo << "-" << c_hi;
    else
        os << "o:" << o << "/" << (half == CosetHalf::first ? "a" : "b");
    return os.str();
}

std::vector<WorkUnit> make_c_range_units(uint64_t q, Strategy strategy) {
    const uint64_t total = q - 1;
    const uint64_t block = (total + 63) / 64;
    std::vector<WorkUnit> units;
    for (uint64_t lo = 1; lo <= total; lo += block) {
        WorkUnit u;
        u.q = q;
        u.kind = UnitKind::c_range;
        u.c_lo = uint32_t(lo);
        u.c_hi = uint32_t(std::min(total, lo + block - 1));
        u.strategy = strategy;
        units.push_back(u);
    }
    return units;
}

std::vector<WorkUnit> make_coset_units(uint64_t q, const CosetStructure& cs) {
    std::vector<WorkUnit> units;
    units.reserve(cs.v * 2);
    for (uint64_t o = 0; o < cs.v; ++o) {
        for (CosetHalf half : {CosetHalf::first, CosetHalf::second}) {
            WorkUnit u;
            u.q = q;
            u.kind = UnitKind::coset;
            u.o = o;
            u.half = half;
            u.strategy = Strategy::alg3_auto;
            units.push_back(u);
        }
    }
    return units;
}

std::string jsonl_record(uint64_t q, uint64_t p, int k, const UnitReport& rep) {
    std::ostringstream os;
    uint32_t c_lo = rep.unit.c_lo, c_hi = rep.unit.c_hi;
    if (rep.unit.kind == UnitKind::coset && !rep.outcomes.empty()) {
        c_lo = rep.outcomes.front().c;
        c_hi = rep.outcomes.back().c;
    }
    os << "{\"q\":" << q << ",\"p\":" << p << ",\"k\":" << k
       << ",\"unit\":\"" << rep.unit.id() << "\",\"c_lo\":" << c_lo
       << ",\"c_hi\":" << c_hi << ",\"ok\":";
    bool ok = true;
    for (const COutcome& oc : rep.outcomes)
        if (!oc.success) ok = false;
    os << (ok ? "true" : "false") << ",\"failures\":[";
    bool first = true;
    for (const COutcome& oc : rep.outcomes) {
        if (oc.success) continue;
        if (!first) os << ',';
        first = false;
        os << "{\"c\":" << oc.c << ",\"residual_a\":[";
        for (size_t i = 0; i < oc.residual_values.size(); ++i) {
            if (i) os << ',';
            os << oc.residual_values[i];
        }
        os << "]}";
    }
    os << "],\"m_hist\":{";
    std::map<uint64_t, uint64_t> hist;
    for (const COutcome& oc : rep.outcomes)
        if (oc.success) ++hist[oc.m_terminal];
    first = true;
    for (auto& [m, cnt] : hist) {
        if (!first) os << ',';
        first = false;
        os << '"' << m << "\":" << cnt;
    }
    os << "},\"crc32\":\"" << crc_hex(rep.crc) << "\",\"wall_ms\":0}";
    return os.str();
}

std::string crc_hex(uint32_t crc) {
    static const char* digits = "0123456789abcdef";
    std::string s(8, '0');
    for (int i = 7; i >= 0; --i) {
        s[size_t(i)] = digits[crc & 0xF];
        crc >>= 4;
    }
    return s;
}

}  // namespace primsum
