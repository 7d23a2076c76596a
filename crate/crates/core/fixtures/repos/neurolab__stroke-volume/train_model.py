class LesionSegmenter:
    def __init__(self, depth=4):
        self.depth = depth

    def describe(self):
        return f"UNet-like segmenter with {self.depth} levels"
