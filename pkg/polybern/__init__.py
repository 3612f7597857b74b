# Package marker for polybern
