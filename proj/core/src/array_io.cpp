#include "hexpdc/array_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hexpdc {

namespace {
constexpr char kMagic[] = "HXPD1\n";
constexpr std::size_t kMagicLen = 6;

std::size_t shape_count(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    return n;
}
}  // namespace

std::size_t ArrayFile::Entry::count() const { return shape_count(shape); }

void ArrayFile::put(const std::string& name, std::vector<double> data,
                    std::vector<std::size_t> shape) {
    if (shape_count(shape) != data.size())
        throw std::invalid_argument("ArrayFile: shape does not match data size for " + name);
    Entry e;
    e.dtype = "f8";
    e.shape = std::move(shape);
    e.f8 = std::move(data);
    entries_[name] = std::move(e);
}

void ArrayFile::put(const std::string& name, std::vector<std::complex<double>> data,
                    std::vector<std::size_t> shape) {
    if (shape_count(shape) != data.size())
        throw std::invalid_argument("ArrayFile: shape does not match data size for " + name);
    Entry e;
    e.dtype = "c16";
    e.shape = std::move(shape);
    e.c16 = std::move(data);
    entries_[name] = std::move(e);
}

void ArrayFile::set_meta(const std::string& key, const std::string& value) { meta_[key] = value; }

const ArrayFile::Entry& ArrayFile::get(const std::string& name) const {
    const auto it = entries_.find(name);
    if (it == entries_.end()) throw std::out_of_range("ArrayFile: no array named " + name);
    return it->second;
}

void ArrayFile::save(const std::string& path) const {
    nlohmann::json header;
    header["format"] = "hexpdc-array-v1";
    header["meta"] = meta_;
    std::size_t offset = 0;
    nlohmann::json arrays = nlohmann::json::array();
    for (const auto& [name, e] : entries_) {
        const std::size_t bytes = e.count() * (e.dtype == "f8" ? 8 : 16);
        arrays.push_back({{"name", name}, {"dtype", e.dtype}, {"shape", e.shape},
                          {"offset", offset}, {"bytes", bytes}});
        offset += bytes;
    }
    header["arrays"] = arrays;
    const std::string htext = header.dump();

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kMagic, kMagicLen);
    const std::uint64_t hlen = htext.size();
    out.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
    out.write(htext.data(), static_cast<std::streamsize>(htext.size()));
    for (const auto& [name, e] : entries_) {
        if (e.dtype == "f8")
            out.write(reinterpret_cast<const char*>(e.f8.data()),
                      static_cast<std::streamsize>(e.f8.size() * 8));
        else
            out.write(reinterpret_cast<const char*>(e.c16.data()),
                      static_cast<std::streamsize>(e.c16.size() * 16));
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

ArrayFile ArrayFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[kMagicLen];
    in.read(magic, kMagicLen);
    if (!in || std::string(magic, kMagicLen) != std::string(kMagic, kMagicLen))
        throw std::runtime_error(path + " is not a hexpdc array file");
    std::uint64_t hlen = 0;
    in.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
    std::string htext(hlen, '\0');
    in.read(htext.data(), static_cast<std::streamsize>(hlen));
    const auto header = nlohmann::json::parse(htext);

    ArrayFile file;
    if (header.contains("meta"))
        file.meta_ = header["meta"].get<std::map<std::string, std::string>>();
    for (const auto& a : header.at("arrays")) {
        Entry e;
        e.dtype = a.at("dtype").get<std::string>();
        e.shape = a.at("shape").get<std::vector<std::size_t>>();
        const std::size_t n = e.count();
        if (e.dtype == "f8") {
            e.f8.resize(n);
            in.read(reinterpret_cast<char*>(e.f8.data()), static_cast<std::streamsize>(n * 8));
        } else if (e.dtype == "c16") {
            e.c16.resize(n);
            in.read(reinterpret_cast<char*>(e.c16.data()), static_cast<std::streamsize>(n * 16));
        } else {
            throw std::runtime_error("unknown dtype " + e.dtype);
        }
        file.entries_[a.at("name").get<std::string>()] = std::move(e);
    }
    if (!in) throw std::runtime_error("truncated array file " + path);
    return file;
}

std::string matrix_csv(const std::string& row_name, const std::vector<double>& rows,
                       const std::string& col_name, const std::vector<double>& cols,
                       const std::vector<double>& data) {
    if (data.size() != rows.size() * cols.size())
        throw std::invalid_argument("matrix_csv: data size mismatch");
    std::ostringstream os;
    os.precision(10);
    os << row_name << '\\' << col_name;
    for (double c : cols) os << ',' << c;
    os << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        os << rows[r];
        for (std::size_t c = 0; c < cols.size(); ++c) os << ',' << data[r * cols.size() + c];
        os << '\n';
    }
    return os.str();
}

std::string trace_csv(const std::string& x_name, const std::vector<double>& x,
                      const std::string& y_name, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("trace_csv: size mismatch");
    std::ostringstream os;
    os.precision(12);
    os << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) os << x[i] << ',' << y[i] << '\n';
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hexpdc
