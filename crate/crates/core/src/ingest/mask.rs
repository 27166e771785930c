use crate::error::{Error, Result};
use crate::ingest::pgm::GrayImage;

/// Boolean raster, row-major with row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: usize,
    height: usize,
    data: Vec<bool>,
}

impl Mask {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::Image(format!(
                "mask of {} cells does not match {width}x{height}",
                data.len()
            )));
        }
        Ok(Mask { width, height, data })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let data = (0..height)
            .flat_map(|r| (0..width).map(move |c| (c, r)))
            .map(|(c, r)| f(c, r))
            .collect();
        Mask::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        self.data[row * self.width + col]
    }

    /// Like `get`, but false outside the raster.
    pub fn get_signed(&self, col: isize, row: isize) -> bool {
        col >= 0
            && row >= 0
            && (col as usize) < self.width
            && (row as usize) < self.height
            && self.get(col as usize, row as usize)
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }

    pub(crate) fn cells(&self) -> &[bool] {
        &self.data
    }
}

/// Foreground is every pixel darker than `threshold`.
pub fn binarize(img: &GrayImage, threshold: u8) -> Result<Mask> {
    let data: Vec<bool> = img.pixels().iter().map(|&v| v < threshold).collect();
    let mask = Mask::new(img.width(), img.height(), data)?;
    match mask.count() {
        0 => Err(Error::EmptyForeground),
        n if n == img.width() * img.height() => Err(Error::FullForeground),
        _ => Ok(mask),
    }
}
