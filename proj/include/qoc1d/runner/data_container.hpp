#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qoc1d/core/types.hpp"

namespace qoc1d::runner {

/// Ordered map of names to scalars, arrays and appendable series. Saving
/// produces a deterministic JSON file: sorted keys, 17 significant digits,
/// complex values as [re, im] pairs.
class DataContainer {
public:
    void set(const std::string& name, double value);
    void set(const std::string& name, std::int64_t value);
    void set(const std::string& name, int value) { set(name, static_cast<std::int64_t>(value)); }
    void set(const std::string& name, const std::string& value);
    void set(const std::string& name, complexd value);
    void set(const std::string& name, const RVec& value);
    void set(const std::string& name, const CVec& value);

    void append(const std::string& name, double value);
    void append(const std::string& name, complexd value);
    void append(const std::string& name, const RVec& row);
    void append(const std::string& name, const CVec& row);

    bool contains(const std::string& name) const { return entries_.count(name) != 0; }
    std::size_t size() const { return entries_.size(); }

    /// Serialized JSON document (with trailing newline).
    std::string dump() const;
    /// Write to a path ending in ".json".
    void save(const std::string& path) const;

private:
    using Entry = std::variant<double, std::int64_t, std::string, complexd,
                               RVec, CVec,
                               std::vector<double>, std::vector<complexd>,
                               std::vector<RVec>, std::vector<CVec>>;
    std::map<std::string, Entry> entries_;

    template <typename Series, typename Value>
    void append_impl(const std::string& name, Value&& value);
};

} // namespace qoc1d::runner
