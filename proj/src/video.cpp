#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "slideanim/render.hpp"

namespace slideanim {

namespace fs = std::filesystem;

namespace {

std::string frame_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05d", index);
  return buf;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int worker_count(int jobs, std::size_t tasks) {
  unsigned n = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (n > tasks) n = static_cast<unsigned>(tasks);
  return static_cast<int>(n == 0 ? 1 : n);
}

}  // namespace

std::string RenderManifest::to_text() const {
  std::string out;
  out += "fps: " + format_number(fps) + "\n";
  out += "total_s: " + format_number(total_s) + "\n";
  out += "n_frames: " + std::to_string(n_frames) + "\n";
  for (std::size_t i = 0; i < frame_hashes.size(); ++i) {
    out += frame_name(static_cast<int>(i)) + ": " + frame_hashes[i] + "\n";
  }
  return out;
}

RenderManifest render_video(const SlideSpec& slide, const AnimationPlan& plan, double fps,
                            const std::string& out_dir, const RenderOptions& options) {
  Timeline timeline = compile(plan, slide);
  std::vector<double> times = frame_times(timeline, fps);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + out_dir +
                             "': " + ec.message());
  }

  ElementRenderCache cache(slide, options);

  RenderManifest manifest;
  manifest.fps = fps;
  manifest.total_s = timeline.total_s;
  manifest.n_frames = static_cast<int>(times.size());
  manifest.frame_hashes.resize(times.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= times.size() || failed.load()) return;
      try {
        // The last grid point may land past total_s; clamp so the final
        // frame shows the terminal state.
        double t = std::min(times[i], timeline.total_s);
        Image frame = rasterize(slide, sample(timeline, slide, t), cache, options);
        write_png(frame, (fs::path(out_dir) / (frame_name(static_cast<int>(i)) + ".png")).string());
        manifest.frame_hashes[i] = hash_hex(pixel_hash(frame));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  const int workers = worker_count(options.jobs, times.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) {
    throw std::runtime_error("render failed for '" + out_dir + "': " + first_error);
  }

  // Manifest last: its presence marks the video complete.
  const std::string manifest_path = (fs::path(out_dir) / "render.manifest").string();
  std::ofstream file(manifest_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + manifest_path + "'");
  file << manifest.to_text();
  if (!file) throw std::runtime_error("write failed for '" + manifest_path + "'");
  return manifest;
}

}  // namespace slideanim
