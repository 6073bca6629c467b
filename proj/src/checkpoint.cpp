#include "gaitxai/checkpoint.hpp"

#include "gaitxai/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace gaitxai {

namespace {

constexpr char kMagic[8] = {'G', 'X', 'A', 'I', 'C', 'K', 'P', 'T'};

class Writer {
public:
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void raw(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes_.insert(bytes_.end(), p, p + n);
    }
    void str(const std::string& s) {
        u64(s.size());
        raw(s.data(), s.size());
    }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
};

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }
    double f64(const char* what) { return std::bit_cast<double>(u64(what)); }
    std::string str(const char* what) {
        const auto n = u64(what);
        need(n, what);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }
    void expect_magic() {
        need(sizeof(kMagic), "magic");
        if (std::memcmp(bytes_.data(), kMagic, sizeof(kMagic)) != 0) throw FormatError("/magic", "not a checkpoint file");
        pos_ += sizeof(kMagic);
    }
    /// Guards element counts against the bytes that remain.
    std::uint64_t count(const char* what, std::size_t elementSize) {
        const auto n = u64(what);
        if (elementSize > 0 && n > (bytes_.size() - pos_) / elementSize)
            throw FormatError(std::string("/") + what, "count exceeds file size");
        return n;
    }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::uint64_t n, const char* what) {
        if (n > bytes_.size() - pos_) throw FormatError(std::string("/") + what, "unexpected end of checkpoint");
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

void write_indices(Writer& w, const std::vector<std::size_t>& idx) {
    w.u64(idx.size());
    for (auto i : idx) w.u64(i);
}

std::vector<std::size_t> read_indices(Reader& r, const char* what) {
    const auto n = r.count(what, 8);
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = r.u64(what);
    return idx;
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& ckpt) {
    Writer w;
    w.raw(kMagic, sizeof(kMagic));
    w.u64(kCheckpointVersion);
    const auto& mc = ckpt.params.config;
    for (auto v : {mc.convLayers, mc.featureMaps, mc.filterSize, mc.stride, mc.fcWidth, mc.numClasses, mc.inputLength})
        w.u64(v);
    w.f64(mc.dropoutRate);
    const auto& tc = ckpt.trainConfig;
    w.f64(tc.learningRate);
    w.f64(tc.adamBeta1);
    w.f64(tc.adamBeta2);
    w.f64(tc.adamEpsilon);
    w.u64(tc.batchSize);
    w.u64(tc.epochs);
    w.u64(tc.seed);
    w.f64(tc.validationFraction);
    w.u64(ckpt.history.size());
    for (const auto& e : ckpt.history) {
        w.u64(e.epoch);
        w.f64(e.trainLoss);
        w.f64(e.trainAccuracy);
        w.f64(e.validationLoss);
        w.f64(e.validationAccuracy);
    }
    write_indices(w, ckpt.split.train);
    write_indices(w, ckpt.split.validation);
    std::vector<std::pair<std::string, std::span<const double>>> tensors;
    ckpt.params.for_each_tensor(
        [&](const std::string& name, std::span<const double> t) { tensors.emplace_back(name, t); });
    w.u64(tensors.size());
    for (const auto& [name, t] : tensors) {
        w.str(name);
        w.u64(t.size());
        for (double v : t) w.f64(v);
    }
    return w.take();
}

Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    r.expect_magic();
    const auto version = r.u64("version");
    if (version != kCheckpointVersion)
        throw FormatError("/version", "unsupported checkpoint version " + std::to_string(version));
    ModelConfig mc;
    mc.convLayers = r.u64("config/convLayers");
    mc.featureMaps = r.u64("config/featureMaps");
    mc.filterSize = r.u64("config/filterSize");
    mc.stride = r.u64("config/stride");
    mc.fcWidth = r.u64("config/fcWidth");
    mc.numClasses = r.u64("config/numClasses");
    mc.inputLength = r.u64("config/inputLength");
    mc.dropoutRate = r.f64("config/dropoutRate");
    Checkpoint ckpt;
    auto& tc = ckpt.trainConfig;
    tc.learningRate = r.f64("train/learningRate");
    tc.adamBeta1 = r.f64("train/adamBeta1");
    tc.adamBeta2 = r.f64("train/adamBeta2");
    tc.adamEpsilon = r.f64("train/adamEpsilon");
    tc.batchSize = r.u64("train/batchSize");
    tc.epochs = r.u64("train/epochs");
    tc.seed = r.u64("train/seed");
    tc.validationFraction = r.f64("train/validationFraction");
    const auto nHist = r.count("history", 40);
    for (std::uint64_t i = 0; i < nHist; ++i) {
        EpochStats e;
        e.epoch = r.u64("history/epoch");
        e.trainLoss = r.f64("history/trainLoss");
        e.trainAccuracy = r.f64("history/trainAccuracy");
        e.validationLoss = r.f64("history/validationLoss");
        e.validationAccuracy = r.f64("history/validationAccuracy");
        ckpt.history.push_back(e);
    }
    ckpt.split.train = read_indices(r, "split/train");
    ckpt.split.validation = read_indices(r, "split/validation");

    try {
        ckpt.params = ModelParams::zeros(mc);
    } catch (const InvalidInput& e) {
        throw FormatError("/config", e.what());
    }
    std::vector<std::pair<std::string, std::span<double>>> tensors;
    ckpt.params.for_each_tensor([&](const std::string& name, std::span<double> t) { tensors.emplace_back(name, t); });
    const auto nTensors = r.u64("tensors");
    if (nTensors != tensors.size()) throw FormatError("/tensors", "tensor count does not match the config");
    for (auto& [name, t] : tensors) {
        const auto stored = r.str("tensors/name");
        if (stored != name) throw FormatError("/tensors/" + stored, "expected tensor " + name);
        const auto n = r.count("tensors/size", 8);
        if (n != t.size()) throw FormatError("/tensors/" + name, "size does not match the config");
        for (auto& v : t) v = r.f64("tensors/values");
    }
    if (!r.at_end()) throw FormatError("/", "trailing bytes after checkpoint");
    return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    const auto bytes = encode_checkpoint(ckpt);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("/", "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_checkpoint(bytes);
}

}  // namespace gaitxai
