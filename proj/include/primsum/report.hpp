// Work units, checksummed unit reports and their JSON-lines serialization.
//
// A unit covers either a contiguous c range or one (coset, half) pair; the
// units of a q always partition the nonzero c values exactly.  The unit
// checksum is CRC-32 (reflected 0xEDB88320, init and final xor 0xFFFFFFFF)
// over the outcome stream: for each c ascending, c as u64 LE, m_terminal
// as u64 LE (0 on failure), then one success byte 0x01/0x00.  The checksum
// is recomputable from the serialized outcomes alone, so reports are
// self-validating; independent implementations can cross-check it.
//
// Serialized reports are canonical bytes: two runs with the same inputs
// must produce identical files regardless of worker count, so the wall_ms
// field always carries 0 in the report (measured times go to the log).

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "primsum/verify.hpp"

namespace primsum {

class Crc32 {
public:
    Crc32() = default;
    void update(const void* data, size_t size);
    void update_u64le(uint64_t v);
    void update_byte(uint8_t b);
    uint32_t value() const { return state_ ^ 0xFFFFFFFFu; }

private:
    uint32_t state_ = 0xFFFFFFFFu;
};

uint32_t crc32_bytes(std::span<const uint8_t> data);

enum class UnitKind { c_range, coset };

struct WorkUnit {
    uint64_t q = 0;
    UnitKind kind = UnitKind::c_range;
    uint32_t c_lo = 0, c_hi = 0;  // inclusive, c_range units
    uint64_t o = 0;               // coset units
    CosetHalf half = CosetHalf::first;
    Strategy strategy = Strategy::hybrid;

    std::string id() const;
};

struct UnitReport {
    WorkUnit unit;
    std::vector<COutcome> outcomes;  // ascending c
    uint32_t crc = 0;
    uint64_t wall_ms = 0;            // informational only, not serialized
};

// checksum per the pinned byte stream; outcomes must be ascending in c
uint32_t unit_crc(std::span<const COutcome> outcomes);

// Fixed partition of the nonzero c values of q into ranges of
// ceil((q-1)/64) values.  Independent of the worker count, so reports are
// byte-identical for any --jobs.
std::vector<WorkUnit> make_c_range_units(uint64_t q, Strategy strategy);

// one unit per (o, half) pair, o ascending
std::vector<WorkUnit> make_coset_units(uint64_t q, const CosetStructure& cs);

// one JSON-lines record:
// {"q":..,"p":..,"k":..,"unit":"..","c_lo":..,"c_hi":..,"ok":..,
//  "failures":[{"c":..,"residual_a":[..]}],"m_hist":{"m":count},
//  "crc32":"hex8","wall_ms":0}
std::string jsonl_record(uint64_t q, uint64_t p, int k, const UnitReport& rep);

std::string crc_hex(uint32_t crc);

}  // namespace primsum
