__all__ = ("Mat2Error", "SingularTransformError")


class Mat2Error(Exception):
    pass


class SingularTransformError(Mat2Error):
    def __init__(self, det: float, threshold: float) -> None:
        self.det = det
        self.threshold = threshold
        super().__init__(
            f"matrix is numerically singular: |det| = {abs(det):.3e} "
            f"<= {threshold:.3e}"
        )
