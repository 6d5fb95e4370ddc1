#pragma once

#include <span>
#include <string>
#include <vector>

#include "packtrack/instance.hpp"
#include "packtrack/solver.hpp"

namespace packtrack {

// CSV formats
//   detections: header id,frame,x,y[,conf]; one detection per row
//   subtracks:  header s1,...,sK,cost; padded slots hold the token "-",
//               slot columns ordered earliest to latest
//   tracks:     no header; one track per line, comma-separated detection ids
//   trace:      header iter,elapsed_s,lb,ub,n_cols,n_rows,event
//   lambda:     header det,lambda; omitted detections default to zero
// Parse errors report the offending line number.

Instance load_instance(const std::string& detections_path,
                       const std::string& subtracks_path, double theta0,
                       int window);

void save_instance(const Instance& instance,
                   const std::string& detections_path,
                   const std::string& subtracks_path);

std::vector<Track> load_tracks(const std::string& path);
void save_tracks(std::span<const Track> tracks, const std::string& path);

void save_trace(std::span<const TraceRecord> trace, const std::string& path);

std::vector<double> load_lambda(const std::string& path, int num_detections);

}  // namespace packtrack
