#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hexpdc {

/// Self-describing binary container for named float64/complex128 arrays with
/// axis metadata. Layout: magic "HXPD1\n", uint64 header length, JSON header
/// (arrays: name, dtype, shape, byte offset; free-form meta), raw
/// little-endian data blobs. Good enough for plot-ready exports and
/// per-realization checkpoints.
class ArrayFile {
  public:
    struct Entry {
        std::string dtype;  // "f8" or "c16"
        std::vector<std::size_t> shape;
        std::vector<double> f8;
        std::vector<std::complex<double>> c16;
        std::size_t count() const;
    };

    void put(const std::string& name, std::vector<double> data, std::vector<std::size_t> shape);
    void put(const std::string& name, std::vector<std::complex<double>> data,
             std::vector<std::size_t> shape);
    void set_meta(const std::string& key, const std::string& value);

    bool has(const std::string& name) const { return entries_.count(name) > 0; }
    const Entry& get(const std::string& name) const;
    const std::map<std::string, std::string>& meta() const { return meta_; }

    void save(const std::string& path) const;
    static ArrayFile load(const std::string& path);

  private:
    std::map<std::string, Entry> entries_;
    std::map<std::string, std::string> meta_;
};

/// CSV export of a 2D section: header "row_name\\col_name,c0,c1,...", one row
/// per row-axis value. data is row-major [rows.size() x cols.size()].
std::string matrix_csv(const std::string& row_name, const std::vector<double>& rows,
                       const std::string& col_name, const std::vector<double>& cols,
                       const std::vector<double>& data);

/// Two-column CSV for 1D traces.
std::string trace_csv(const std::string& x_name, const std::vector<double>& x,
                      const std::string& y_name, const std::vector<double>& y);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace hexpdc
