// Reference implementation of the scorer line protocol: reads one JSON
// request per line on stdin ({"id", "question", "frame"}) and answers
// {"id", "confidence"} on stdout. The misbehaving modes exist so the driver's
// error paths can be exercised from tests.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "streamloc/scorer.hpp"

int main(int argc, char** argv) {
    CLI::App app{"streamloc scorer stub (line protocol over stdin/stdout)"};

    std::string mode = "constant";
    app.add_option("--mode", mode, "constant|decay|synthetic|garbage|silent|wrong-id")
        ->check(CLI::IsMember({"constant", "decay", "synthetic", "garbage", "silent", "wrong-id"}));
    double value = 0.5;
    app.add_option("--value", value, "confidence for --mode constant");

    streamloc::SyntheticProfile profile;
    app.add_option("--stream-length", profile.stream_length);
    app.add_option("--baseline", profile.baseline_mean);
    app.add_option("--plateau-start", profile.plateau_interval.start);
    app.add_option("--plateau-end", profile.plateau_interval.end);
    app.add_option("--plateau-mean", profile.plateau_mean);
    app.add_option("--noise-std", profile.noise_std);
    app.add_option("--noise-seed", profile.noise_seed);

    CLI11_PARSE(app, argc, argv);

    std::string line;
    std::uint64_t last_id = 0;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;

        std::uint64_t id = 0;
        std::uint64_t frame = 0;
        try {
            const nlohmann::json request = nlohmann::json::parse(line);
            id = request.at("id").get<std::uint64_t>();
            frame = request.at("frame").get<std::uint64_t>();
            request.at("question").get<std::string>();  // required by the protocol
        } catch (const std::exception& e) {
            std::cerr << "stub: bad request: " << e.what() << "\n";
            return 2;
        }
        if (id <= last_id) {
            std::cerr << "stub: request ids must increase (got " << id << " after " << last_id
                      << ")\n";
            return 2;
        }
        last_id = id;

        if (mode == "silent") continue;
        if (mode == "garbage") {
            std::cout << "!!this is not json!!\n" << std::flush;
            continue;
        }

        double confidence = value;
        if (mode == "decay") {
            confidence = 1.0 / (1.0 + static_cast<double>(frame));
        } else if (mode == "synthetic") {
            try {
                confidence = streamloc::synthetic_score(profile, frame);
            } catch (const streamloc::Error& e) {
                std::cerr << "stub: " << e.what() << "\n";
                return 2;
            }
        }

        const nlohmann::ordered_json response{{"id", mode == "wrong-id" ? id + 1 : id},
                                              {"confidence", confidence}};
        std::cout << response.dump() << "\n" << std::flush;
    }
    return 0;
}
