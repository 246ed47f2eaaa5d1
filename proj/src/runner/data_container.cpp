#include "qoc1d/runner/data_container.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qoc1d/core/errors.hpp"

namespace qoc1d::runner {

namespace {

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void format_complex(std::string& out, complexd v) {
    out += '[';
    format_double(out, v.real());
    out += ',';
    format_double(out, v.imag());
    out += ']';
}

void format_string(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

void format_rvec(std::string& out, const RVec& v) {
    out += '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        format_double(out, v[i]);
    }
    out += ']';
}

void format_cvec(std::string& out, const CVec& v) {
    out += '[';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        format_complex(out, v[i]);
    }
    out += ']';
}

} // namespace

template <typename Series, typename Value>
void DataContainer::append_impl(const std::string& name, Value&& value) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
        Series s;
        s.push_back(std::forward<Value>(value));
        entries_.emplace(name, std::move(s));
        return;
    }
    auto* series = std::get_if<Series>(&it->second);
    if (!series)
        throw std::invalid_argument("DataContainer: key \"" + name +
                                    "\" holds a different kind of value");
    if (!series->empty()) {
        if constexpr (std::is_same_v<Series, std::vector<RVec>> ||
                      std::is_same_v<Series, std::vector<CVec>>) {
            if (series->front().size() != value.size())
                throw std::invalid_argument("DataContainer: inhomogeneous row shape for \"" +
                                            name + "\"");
        }
    }
    series->push_back(std::forward<Value>(value));
}

void DataContainer::set(const std::string& name, double value) { entries_[name] = value; }
void DataContainer::set(const std::string& name, std::int64_t value) { entries_[name] = value; }
void DataContainer::set(const std::string& name, const std::string& value) { entries_[name] = value; }
void DataContainer::set(const std::string& name, complexd value) { entries_[name] = value; }
void DataContainer::set(const std::string& name, const RVec& value) { entries_[name] = value; }
void DataContainer::set(const std::string& name, const CVec& value) { entries_[name] = value; }

void DataContainer::append(const std::string& name, double value) {
    append_impl<std::vector<double>>(name, value);
}
void DataContainer::append(const std::string& name, complexd value) {
    append_impl<std::vector<complexd>>(name, value);
}
void DataContainer::append(const std::string& name, const RVec& row) {
    append_impl<std::vector<RVec>>(name, row);
}
void DataContainer::append(const std::string& name, const CVec& row) {
    append_impl<std::vector<CVec>>(name, row);
}

std::string DataContainer::dump() const {
    std::string out;
    out += '{';
    bool first = true;
    for (const auto& [name, entry] : entries_) {
        if (!first) out += ',';
        first = false;
        format_string(out, name);
        out += ':';
        std::visit(
            [&out](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    format_double(out, v);
                } else if constexpr (std::is_same_v<T, std::int64_t>) {
                    out += std::to_string(v);
                } else if constexpr (std::is_same_v<T, std::string>) {
                    format_string(out, v);
                } else if constexpr (std::is_same_v<T, complexd>) {
                    format_complex(out, v);
                } else if constexpr (std::is_same_v<T, RVec>) {
                    format_rvec(out, v);
                } else if constexpr (std::is_same_v<T, CVec>) {
                    format_cvec(out, v);
                } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                    out += '[';
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        if (i) out += ',';
                        format_double(out, v[i]);
                    }
                    out += ']';
                } else if constexpr (std::is_same_v<T, std::vector<complexd>>) {
                    out += '[';
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        if (i) out += ',';
                        format_complex(out, v[i]);
                    }
                    out += ']';
                } else if constexpr (std::is_same_v<T, std::vector<RVec>>) {
                    out += '[';
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        if (i) out += ',';
                        format_rvec(out, v[i]);
                    }
                    out += ']';
                } else if constexpr (std::is_same_v<T, std::vector<CVec>>) {
                    out += '[';
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        if (i) out += ',';
                        format_cvec(out, v[i]);
                    }
                    out += ']';
                }
            },
            entry);
    }
    out += "}\n";
    return out;
}

void DataContainer::save(const std::string& path) const {
    if (path.size() < 5 || path.substr(path.size() - 5) != ".json")
        throw std::invalid_argument("DataContainer::save: path must end in .json");
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw IoError("DataContainer::save: cannot open \"" + path + "\" for writing");
    const std::string doc = dump();
    file.write(doc.data(), static_cast<std::streamsize>(doc.size()));
    if (!file)
        throw IoError("DataContainer::save: write failed for \"" + path + "\"");
}

} // namespace qoc1d::runner
