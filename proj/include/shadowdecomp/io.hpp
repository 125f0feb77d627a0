#pragma once

#include "shadowdecomp/image.hpp"

#include <stdexcept>
#include <string>

namespace shadowdecomp {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// PNG interchange. 8-bit values map v/255, 16-bit v/65535; alpha channels
// are dropped on load. Saving quantizes round-half-up at the chosen depth.
Image load_image(const std::string& path);
GrayImage load_gray(const std::string& path);
void save_image(const Image& img, const std::string& path, int depth = 8);
void save_gray(const GrayImage& img, const std::string& path, int depth = 8);

// Masks: any grayscale PNG, thresholded at > 0.5; saved as 0/255 8-bit.
Mask load_mask(const std::string& path);
void save_mask(const Mask& mask, const std::string& path);

// Mattes: 16-bit grayscale PNG, alpha = value/65535.
Matte load_matte(const std::string& path);
void save_matte(const Matte& matte, const std::string& path);

}  // namespace shadowdecomp
