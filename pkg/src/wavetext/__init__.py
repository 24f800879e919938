"""Scene-text detection with Haar wavelet sub-band fusion."""

from .binarize import apply_threshold, histogram, otsu_threshold
from .charseg import Component, Polarity, detect_polarity, extract_characters, label_components, normalize_polarity
from .cluster import ClusterParams, potentials, subsample, subtractive_cluster
from .edgemap import EdgeParams, binarize_subband, dilate, fuse_and, row_filter, upsample2x
from .grow import BBox, GrowParams, grow_region, merge_boxes, shrink_wrap
from .haar import SubbandSet, forward_haar, inverse_haar
from .pipeline import DetectionReport, PipelineConfig, PipelineError, run_pipeline
from .raster import ImageFormatError, load_image, pad_to_even, save_gray, save_mask, to_gray

__version__ = "0.1.0"
